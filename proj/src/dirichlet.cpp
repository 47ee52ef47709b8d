#include "dp5/dirichlet.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace dp5 {

namespace {

u64 as_u(i64 v) {
  if (v <= 0) throw std::invalid_argument("eta components must be positive");
  return static_cast<u64>(v);
}

// Largest r with r^k <= n.
u64 integer_root(u64 n, int k) {
  if (k == 1 || n < 2) return n;
  auto r = static_cast<u64>(std::llround(std::pow(static_cast<double>(n), 1.0 / k)));
  auto pow_le = [&](u64 base) {
    u64 acc = 1;
    for (int i = 0; i < k; ++i) {
      if (base != 0 && acc > n / base) return false;
      acc *= base;
    }
    return acc <= n;
  };
  while (r > 0 && !pow_le(r)) --r;
  while (pow_le(r + 1)) ++r;
  return r;
}

u64 ipow(u64 base, int k) {
  u64 r = 1;
  for (int i = 0; i < k; ++i) r *= base;
  return r;
}

// sum over squarefree k | e3, (k, e1e4) = 1 of mu(k) / (k phi*(gcd(e3, k e2)))
Rational coprime_divisor_sum(u64 e1, u64 e2, u64 e3, u64 e4) {
  Rational sum;
  for (u64 k : squarefree_divisors(e3)) {
    if (std::gcd(k, e1 * e4) != 1) continue;
    sum += Rational(moebius(k), static_cast<i64>(k)) / phi_star(std::gcd(e3, k * e2));
  }
  return sum;
}


}  // namespace

ZetaMultiple::ZetaMultiple(Rational coefficient, int zeta_power)
    : coefficient_(std::move(coefficient)), power_(zeta_power) {}

double ZetaMultiple::to_double() const {
  const double inv_zeta2 = 6.0 / (std::numbers::pi * std::numbers::pi);
  return coefficient_.to_double() * std::pow(inv_zeta2, zeta_power());
}

ZetaMultiple& ZetaMultiple::operator+=(const ZetaMultiple& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) {
    *this = o;
    return *this;
  }
  if (power_ != o.power_) throw std::logic_error("ZetaMultiple: adding different powers of 1/zeta(2)");
  coefficient_ += o.coefficient_;
  return *this;
}

ZetaMultiple& ZetaMultiple::operator-=(const ZetaMultiple& o) {
  return *this += ZetaMultiple(-o.coefficient(), o.zeta_power());
}

std::ostream& operator<<(std::ostream& os, const ZetaMultiple& z) {
  os << z.coefficient();
  if (z.zeta_power() == 1) os << " / zeta(2)";
  if (z.zeta_power() > 1) os << " / zeta(2)^" << z.zeta_power();
  return os;
}

Rational theta0(const EtaTuple& e) {
  const u64 e1 = as_u(e.e1), e2 = as_u(e.e2), e3 = as_u(e.e3), e4 = as_u(e.e4);
  const Rational base = phi_star(e3 * e4);
  Rational sum;
  for (u64 k : squarefree_divisors(e3)) {
    if (std::gcd(k, e1 * e4) != 1) continue;
    sum += Rational(moebius(k)) * base / (Rational(static_cast<i64>(k)) * phi_star(std::gcd(e3, k * e2)));
  }
  return sum;
}

ZetaMultiple theta1a(const EtaTuple& e) {
  const u64 e123 = as_u(e.e1) * as_u(e.e2) * as_u(e.e3);
  return {theta0(e) * phi_star(e123) * inverse_square_factor(e123 * as_u(e.e4)), 1};
}

ZetaMultiple theta2a(const EtaTuple& e) {
  const u64 e1234 = as_u(e.e1) * as_u(e.e2) * as_u(e.e3) * as_u(e.e4);
  return theta1a(e).scaled(phi_star(e1234));
}

Rational theta1b(const EtaTuple& e) {
  const u64 e1234 = as_u(e.e1) * as_u(e.e2) * as_u(e.e3) * as_u(e.e4);
  return theta0(e) * phi_star(e1234);
}

ZetaMultiple theta2b(const EtaTuple& e) {
  const u64 e123 = as_u(e.e1) * as_u(e.e2) * as_u(e.e3);
  return {theta1b(e) * phi_star(e123) * inverse_square_factor(e123 * as_u(e.e4)), 1};
}

ZetaMultiple theta(const EtaTuple& e) {
  const u64 e1 = as_u(e.e1), e2 = as_u(e.e2), e3 = as_u(e.e3), e4 = as_u(e.e4);
  if (!eta_pairwise_coprime(e)) return {};
  const u64 e123 = e1 * e2 * e3;
  const Rational c = phi_star(e3 * e4) * phi_star(e123) * phi_star(e123 * e4) * inverse_square_factor(e123 * e4) *
                     coprime_divisor_sum(e1, e2, e3, e4);
  return {c, 1};
}

u64 weighted_norm(const EtaTuple& e, const ExponentVector& k, u64 limit) {
  const std::array<u64, 4> base = {as_u(e.e1), as_u(e.e2), as_u(e.e3), as_u(e.e4)};
  u64 acc = 1;
  for (std::size_t j = 0; j < 4; ++j) {
    for (int i = 0; i < k.k[j]; ++i) {
      if (acc > limit / base[j]) return limit + 1;
      acc *= base[j];
    }
  }
  return acc;
}

ZetaMultiple delta_k(const ExponentVector& k, u64 n) {
  if (n == 0) throw std::invalid_argument("delta_k: n must be positive");
  ZetaMultiple sum;
  const auto& [k1, k2, k3, k4] = k.k;
  for (u64 e1 = 1; ipow(e1, k1) <= n; ++e1) {
    if (n % ipow(e1, k1) != 0) continue;
    const u64 n1 = n / ipow(e1, k1);
    for (u64 e2 = 1; ipow(e2, k2) <= n1; ++e2) {
      if (n1 % ipow(e2, k2) != 0) continue;
      const u64 n2 = n1 / ipow(e2, k2);
      for (u64 e3 = 1; ipow(e3, k3) <= n2; ++e3) {
        if (n2 % ipow(e3, k3) != 0) continue;
        const u64 n3 = n2 / ipow(e3, k3);
        const u64 e4 = integer_root(n3, k4);
        if (ipow(e4, k4) != n3) continue;
        const EtaTuple eta{static_cast<i64>(e1), static_cast<i64>(e2), static_cast<i64>(e3), static_cast<i64>(e4)};
        sum += theta(eta).scaled(Rational(1, static_cast<i64>(e1 * e2 * e3 * e4)));
      }
    }
  }
  return sum;
}

namespace {

// Calls visit(eta) for every eta with weighted_norm(eta, k) <= t.
template <class Visit>
void for_each_eta(const ExponentVector& k, u64 t, Visit&& visit) {
  for (i64 e1 = 1; weighted_norm({e1, 1, 1, 1}, k, t) <= t; ++e1) {
    for (i64 e2 = 1; weighted_norm({e1, e2, 1, 1}, k, t) <= t; ++e2) {
      for (i64 e3 = 1; weighted_norm({e1, e2, e3, 1}, k, t) <= t; ++e3) {
        for (i64 e4 = 1; weighted_norm({e1, e2, e3, e4}, k, t) <= t; ++e4) visit(EtaTuple{e1, e2, e3, e4});
      }
    }
  }
}

Rational inverse_product(const EtaTuple& e) { return Rational(1, e.e1 * e.e2 * e.e3 * e.e4); }

}  // namespace

ZetaMultiple summatory_M(const ExponentVector& k, u64 t) {
  if (t == 0) throw std::invalid_argument("summatory_M: t must be positive");
  ZetaMultiple sum;
  for_each_eta(k, t, [&](const EtaTuple& e) { sum += theta(e).scaled(inverse_product(e)); });
  return sum;
}

ZetaMultiple summatory_M_by_n(const ExponentVector& k, u64 t) {
  if (t == 0) throw std::invalid_argument("summatory_M_by_n: t must be positive");
  ZetaMultiple sum;
  for (u64 n = 1; n <= t; ++n) sum += delta_k(k, n);
  return sum;
}

double local_factor(const ExponentVector& k, u64 p, double s) {
  const double u = 1.0 / static_cast<double>(p);
  const double c = 1 - u;
  std::array<double, 4> x{};
  for (std::size_t j = 0; j < 4; ++j) {
    const double exponent = k.k[j] * s + 1;
    if (!(exponent > 0)) throw std::domain_error("local_factor: p^(k_j s + 1) must exceed 1");
    x[j] = 1.0 / std::expm1(exponent * std::log(static_cast<double>(p)));
  }
  const double outer = c * x[0] + c * x[1] + c * x[3];
  return c * ((1 + u) + outer + c * x[2] * ((1 - 2 * u) + outer));
}

Rational local_factor_at_zero(u64 p) {
  const auto pp = static_cast<i64>(p);
  const Rational u(1, pp);
  const Rational c = Rational(1) - u;
  const Rational x(1, pp - 1);  // 1 / (p^1 - 1)
  const Rational outer = Rational(3) * c * x;
  return c * ((Rational(1) + u) + outer + c * x * ((Rational(1) - Rational(2) * u) + outer));
}

Rational theta_local(u64 p, int a, int b, int c, int d) {
  const EtaTuple e{static_cast<i64>(ipow(p, a)), static_cast<i64>(ipow(p, b)), static_cast<i64>(ipow(p, c)),
                   static_cast<i64>(ipow(p, d))};
  const auto t = theta(e);
  if (t.is_zero()) return {};
  const auto pp = static_cast<i64>(p);
  return t.coefficient() * Rational(pp * pp - 1, pp * pp);
}

LocalSum local_factor_bruteforce(const ExponentVector& k, u64 p, double s, int max_exponent) {
  std::array<double, 4> y{};
  for (std::size_t j = 0; j < 4; ++j) y[j] = std::pow(static_cast<double>(p), -(k.k[j] * s + 1));
  LocalSum out;
  const int n = max_exponent;
  for (int a = 0; a <= n; ++a) {
    for (int b = 0; b <= n; ++b) {
      for (int c = 0; c <= n; ++c) {
        for (int d = 0; d <= n; ++d) {
          const Rational coeff = theta_local(p, a, b, c, d);
          if (coeff.is_zero()) continue;
          const double v = coeff.to_double();
          out.max_coefficient = std::max(out.max_coefficient, std::abs(v));
          out.value += v * std::pow(y[0], a) * std::pow(y[1], b) * std::pow(y[2], c) * std::pow(y[3], d);
        }
      }
    }
  }
  // full - box = prod 1/(1-y) * (1 - prod (1 - y^{n+1}))
  double full = 1;
  double log_kept = 0;
  for (double yj : y) {
    full /= 1 - yj;
    log_kept += std::log1p(-std::pow(yj, n + 1));
  }
  out.truncation_bound = full * -std::expm1(log_kept);
  return out;
}

ThetaConsistency check_theta_consistency(i64 bound) {
  ThetaConsistency out;
  for (i64 a = 1; a <= bound; ++a)
    for (i64 b = 1; b <= bound; ++b) {
      if (std::gcd(a, b) != 1) continue;
      for (i64 d = 1; d <= bound; ++d) {
        if (std::gcd(a, d) != 1 || std::gcd(b, d) != 1) continue;
        for (i64 c = 1; c <= bound; ++c) {
          const EtaTuple e{a, b, c, d};
          ++out.checked;
          const ZetaMultiple t = theta(e);
          if (!(t == theta2a(e) && t == theta2b(e))) {
            ++out.mismatches;
            if (!out.first_mismatch) out.first_mismatch = e;
          }
        }
      }
    }
  return out;
}

bool LocalOracleCase::ok() const {
  return std::abs(brute.value - closed) <= brute.truncation_bound + 1e-12 * std::abs(closed);
}

std::vector<LocalOracleCase> check_local_factor_oracle(int max_exponent) {
  std::vector<LocalOracleCase> out;
  for (const ExponentVector& k : {kLowerExponents, kUpperExponents})
    for (u64 p : {2, 3, 5})
      for (double s : {0.5, 1.0}) {
        LocalOracleCase c;
        c.k = k;
        c.p = p;
        c.s = s;
        c.closed = local_factor(k, p, s);
        c.brute = local_factor_bruteforce(k, p, s, max_exponent);
        out.push_back(c);
      }
  return out;
}

double gk_zero_factor(u64 p) {
  const double x = 1.0 / static_cast<double>(p);
  return std::pow(1 - x, 5) * (1 + 5 * x + x * x);
}

double gk_zero_identity_error(const ExponentVector& k, u64 p) {
  const double c = 1 - 1.0 / static_cast<double>(p);
  const double lhs = local_factor(k, p, 0.0) * c * c * c * c;
  const double rhs = gk_zero_factor(p);
  return std::abs(lhs - rhs) / rhs;
}

MainTerm predicted_main_term(u64 B, double omega, bool check_delta_form) {
  if (B == 0) throw std::invalid_argument("predicted_main_term: B must be positive");
  MainTerm m;
  for_each_eta(kLowerExponents, B, [&](const EtaTuple& e) {
    if (weighted_norm(e, kUpperExponents, B) <= B) return;
    ++m.eta_count;
    m.eta_sum += theta(e).scaled(inverse_product(e));
  });
  if (check_delta_form) {
    ZetaMultiple d;
    for (u64 n = 1; n <= B; ++n) d += delta_k(kLowerExponents, n) - delta_k(kUpperExponents, n);
    if (!(d == m.eta_sum)) throw std::logic_error("predicted_main_term: eta-sum and Delta-difference disagree");
    m.delta_sum = d;
  }
  m.value = omega * static_cast<double>(B) * m.eta_sum.to_double();
  return m;
}

std::vector<u64> negative_delta_values(const ExponentVector& k, u64 n_max) {
  std::vector<u64> out;
  for (u64 n = 1; n <= n_max; ++n) {
    if (delta_k(k, n).coefficient().sign() < 0) out.push_back(n);
  }
  return out;
}

}  // namespace dp5
