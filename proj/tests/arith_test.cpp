#include "doctest.h"

#include <numeric>
#include <random>

#include "dp5/arith.hpp"

using namespace dp5;

TEST_SUITE("arith") {

TEST_CASE("factorize") {
  CHECK(factorize(1).empty());
  CHECK(factorize(12) == Factorization{{2, 2}, {3, 1}});
  CHECK(factorize(9699690) ==
        Factorization{{2, 1}, {3, 1}, {5, 1}, {7, 1}, {11, 1}, {13, 1}, {17, 1}, {19, 1}});
  CHECK(factorize(1'000'000'007) == Factorization{{1'000'000'007, 1}});
  CHECK_THROWS_AS(factorize(0), std::invalid_argument);
}

TEST_CASE("factorize round trip") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<u64> dist(1, 10'000'000'000ULL);
  for (int i = 0; i < 2000; ++i) {
    const u64 n = dist(rng);
    u64 back = 1;
    u64 prev = 0;
    for (const auto& [p, e] : factorize(n)) {
      CHECK(p > prev);
      CHECK(is_prime(p));
      prev = p;
      for (int k = 0; k < e; ++k) back *= p;
    }
    CHECK(back == n);
  }
}

TEST_CASE("moebius") {
  CHECK(moebius(1) == 1);
  CHECK(moebius(12) == 0);
  CHECK(moebius(30) == -1);
  CHECK(moebius(7) == -1);
  CHECK(moebius(6) == 1);
}

TEST_CASE("phi_star and phi_dagger") {
  CHECK(phi_star(1) == Rational(1));
  CHECK(phi_star(12) == Rational(1, 3));
  CHECK(phi_star(30) == Rational(4, 15));
  CHECK(phi_dagger(1) == Rational(1));
  CHECK(phi_dagger(6) == Rational(2));
  CHECK(phi_dagger(8) == Rational(3, 2));
}

TEST_CASE("phi_star is sum of mu(d)/d") {
  for (u64 n = 1; n <= 10000; ++n) {
    Rational s;
    for (u64 d = 1; d * d <= n; ++d) {
      if (n % d) continue;
      s += Rational(moebius(d), static_cast<i64>(d));
      if (d * d != n) s += Rational(moebius(n / d), static_cast<i64>(n / d));
    }
    REQUIRE(s == phi_star(n));
  }
}

TEST_CASE("multiplicativity on coprime pairs") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<u64> dist(1, 1'000'000);
  int done = 0;
  while (done < 500) {
    const u64 a = dist(rng), b = dist(rng);
    if (std::gcd(a, b) != 1) continue;
    ++done;
    CHECK(moebius(a * b) == moebius(a) * moebius(b));
    CHECK(phi_star(a * b) == phi_star(a) * phi_star(b));
    CHECK(phi_dagger(a * b) == phi_dagger(a) * phi_dagger(b));
    CHECK(inverse_square_factor(a * b) == inverse_square_factor(a) * inverse_square_factor(b));
  }
}

TEST_CASE("squarefree_divisors") {
  CHECK(squarefree_divisors(1) == std::vector<u64>{1});
  CHECK(squarefree_divisors(12) == std::vector<u64>{1, 2, 3, 6});
  CHECK(squarefree_divisors(8) == std::vector<u64>{1, 2});
  CHECK(squarefree_divisors(9699690).size() == 256);
}

TEST_CASE("coprime") {
  CHECK(coprime(0, 1));
  CHECK(coprime(0, -1));
  CHECK_FALSE(coprime(0, 6));
  CHECK_FALSE(coprime(0, 0));
  CHECK(coprime(-4, 9));
  CHECK_FALSE(coprime(-4, 6));
}

TEST_CASE("Rational") {
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(6, 3).str() == "2");
  CHECK(Rational(-3, 9).str() == "-1/3");
  CHECK((Rational(1, 24) - Rational(1, 72)) == Rational(1, 36));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("primes") {
  const auto ps = primes_up_to(100);
  CHECK(ps.size() == 25);
  CHECK(ps.front() == 2);
  CHECK(ps.back() == 97);
  CHECK(primes_up_to(1'000'000).size() == 78498);
}

}
