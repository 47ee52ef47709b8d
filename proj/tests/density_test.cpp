#include "doctest.h"

#include <cmath>
#include <random>

#include "dp5/density.hpp"

using namespace dp5;

TEST_SUITE("density") {

TEST_CASE("h_max") {
  CHECK(h_max(1, 1, 1, 1) == 2);
  CHECK(h_max(1, 0, 0.5, 0) == 0.5);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 1000; ++i) {
    const double t0 = std::exp(u(rng)), t1 = u(rng), t5 = std::exp(u(rng)), t6 = u(rng) * 10;
    const double lam = std::exp(u(rng));
    const double l4 = std::pow(lam, 4), l6 = std::pow(lam, 6);
    const double a = h_max(t0, t1, t5, t6);
    const double b = h_max(lam * t0, t1 / l4, t5 / l4, t6 * l6);
    CHECK(b == doctest::Approx(a).epsilon(1e-12));
  }
}

TEST_CASE("g0 values") {
  CHECK(g0(1, 0.5, 0) == doctest::Approx(2));
  CHECK(g0(1, 2, 0) == 0);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int i = 0; i < 1000; ++i) {
    const double t5 = std::exp(u(rng)), t6 = std::sinh(3 * u(rng));
    const double v = g0(2, t5, t6);
    CHECK(v >= 0);
    CHECK(v <= 2.0 / 16 + 1e-15);
    CHECK(g0(1, t5, t6) == g0(1, t5, -t6));
  }
}

TEST_CASE("g0 against certified bisection") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 300; ++i) {
    const double t0 = 0.5 + 1.5 * u(rng);
    const double t6 = (u(rng) < 0.5 ? -1 : 1) * std::pow(10.0, -2 + 8 * u(rng));
    const double t5_end = std::min(std::pow(t0, -4), std::cbrt(2 / (t6 * t6)));
    const double t5 = t5_end * std::pow(10.0, -4 * u(rng));
    const double exact = g0(t0, t5, t6);
    const double slow = g0_subdivision(t0, t5, t6, 1e-9 * std::max(exact, 1e-12));
    CAPTURE(t0);
    CAPTURE(t5);
    CAPTURE(t6);
    CHECK(std::abs(exact - slow) <= 1e-7 * std::max(exact, 1e-12));
  }
  // two components of width ~8.6e-11 each
  const double t6 = 1e16, t5 = 1.52643e-11;
  CHECK(g0(1, t5, t6) == doctest::Approx(2 * 8.582e-11).epsilon(1e-3));
  CHECK(g0_subdivision(1, t5, t6, 1e-15) == doctest::Approx(g0(1, t5, t6)).epsilon(1e-6));
}

TEST_CASE("region box is sound") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0, 1);
  int inside = 0;
  for (int i = 0; i < 100000; ++i) {
    const double t0 = 0.5 + 1.5 * u(rng);
    const auto box = region_bounds(t0);
    const double t1 = (2 * u(rng) - 1) * 2 * box.t1_max;
    const double t5 = 2 * box.t5_max * std::pow(u(rng), 3);
    const double t6 = (2 * u(rng) - 1) * std::pow(10.0, 4 * u(rng));
    if (t5 <= 0 || h_max(t0, t1, t5, t6) > 1) continue;
    ++inside;
    CHECK(box.contains(t1, t5, t6));
  }
  CHECK(inside > 1000);
}

TEST_CASE("g2 = g2a + g2b") {
  struct Case {
    double t0;
    EtaTuple eta;
    double B;
  };
  const Case cases[] = {{0.5, {1, 1, 1, 1}, 1e4}, {1, {1, 1, 1, 1}, 1e4}, {2, {1, 1, 1, 1}, 1e4},
                        {1, {2, 1, 1, 1}, 1e5}, {1.5, {1, 3, 1, 2}, 1e6}};
  for (const auto& c : cases) {
    const auto ctx = scaling_context(c.eta, c.B);
    const GFamily g = g_family(c.t0, ctx, 1e-4);
    CAPTURE(c.t0);
    CHECK(g.g2a.value >= 0);
    CHECK(g.g2b.value >= 0);
    CHECK(g.g2.value > 0);
    CHECK(std::abs(g.g2.value - g.g2_sum.value) <= g.g2.error + g.g2_sum.error);
  }
}

TEST_CASE("g2a has an empty domain when Y6 is tiny") {
  // |Y6 t6| > 1 forces |t6| > 1/Y6, beyond the region.
  ScalingContext ctx = scaling_context({1, 1, 1, 1}, 1);
  ctx.Y6 = 1e-12;
  const GFamily g = g_family(1, ctx);
  CHECK(g.g2a.value == 0);
}

TEST_CASE("G2 scaling and omega") {
  const ScalingCheck s = check_G2_scaling(1e-3);
  CHECK(s.ok());
  for (const auto& g : s.G2) CHECK(g.value > 0);
  CHECK(s.omega.value > 0);
  CHECK(s.omega.value == doctest::Approx(27.3305).epsilon(1e-3));
  // t0 = 0.8 is not in the acceptance set
  CHECK(0.64 * G2(0.8).value == doctest::Approx(s.omega.value).epsilon(2e-3));
}

TEST_CASE("omega at two tolerances") {
  const auto a = omega_infty(1e-2);
  const auto b = omega_infty(1e-3);
  CHECK(std::abs(a.value - b.value) <= a.error + b.error);
  CHECK_THROWS_AS(omega_infty(0), std::invalid_argument);
}

TEST_CASE("Euler factors") {
  CHECK(euler_factor_exact(2) == Rational(15, 128));
  CHECK(euler_factor(2) == doctest::Approx(0.1171875).epsilon(1e-15));
  CHECK(euler_factor(1'000'000'007) == doctest::Approx(1).epsilon(1e-15));
  for (u64 p : primes_up_to(1'000'000)) {
    const double f = euler_factor(p);
    const double x = 1.0 / static_cast<double>(p);
    REQUIRE(f < 1);
    REQUIRE(std::abs(std::log(f)) <= 15 * x * x);
  }
  for (u64 p : {2, 3, 5, 7, 11, 101}) CHECK(euler_factor_exact(p).to_double() == doctest::Approx(euler_factor(p)));
}

TEST_CASE("Euler product truncations") {
  const auto lo = euler_product(100'000);
  const auto hi = euler_product(1'000'000);
  CHECK(lo.value > hi.value);
  CHECK(lo.value - hi.value < 1e-6);
  CHECK(lo.value - hi.value <= lo.tail_bound);
  CHECK(hi.primes == 78498);
  CHECK_THROWS_AS(euler_product(1), std::invalid_argument);
}

TEST_CASE("alpha") {
  CHECK(Rational(1, 24) - Rational(1, 72) == Rational(1, 36));
  CHECK(alpha_constant() == Rational(1, 864));
}

TEST_CASE("Peyre constant") {
  const auto c = peyre_constant(1e-3, 1'000'000);
  CHECK(c.value > 0);
  const double direct = c.alpha.to_double() * c.euler.value * c.omega.value;
  CHECK(c.value == doctest::Approx(direct).epsilon(1e-14));
  CHECK(c.value == doctest::Approx(4.9733e-4).epsilon(1e-3));
  CHECK(c.error > 0);
  CHECK(c.error < 1e-2 * c.value);
}

TEST_CASE("decay diagnostics are finite") {
  const auto d = decay_diagnostics();
  CHECK(std::isfinite(d.g0_ratio));
  CHECK(std::isfinite(d.g1a_ratio));
  CHECK(std::isfinite(d.g1b_ratio));
  CHECK(d.g0_ratio > 0);
}

}
