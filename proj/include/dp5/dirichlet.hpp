#pragma once

// Arithmetic densities theta, the Dirichlet coefficients Delta_k, their
// partial sums M_k, the Euler factors F_{k,p} and the predicted main term.

#include <array>
#include <optional>
#include <vector>

#include "dp5/arith.hpp"
#include "dp5/torsor.hpp"

namespace dp5 {

/// coefficient * zeta(2)^{-zeta_power}, exact in Q[1/zeta(2)].
class ZetaMultiple {
 public:
  ZetaMultiple() = default;
  ZetaMultiple(Rational coefficient, int zeta_power);

  const Rational& coefficient() const { return coefficient_; }
  /// 0 for a zero value.
  int zeta_power() const { return coefficient_.is_zero() ? 0 : power_; }
  bool is_zero() const { return coefficient_.is_zero(); }

  /// Substitutes zeta(2) = pi^2/6.
  double to_double() const;

  /// Throws std::logic_error when adding nonzero values of different powers.
  ZetaMultiple& operator+=(const ZetaMultiple& o);
  ZetaMultiple& operator-=(const ZetaMultiple& o);
  friend ZetaMultiple operator+(ZetaMultiple a, const ZetaMultiple& b) { return a += b; }
  friend ZetaMultiple operator-(ZetaMultiple a, const ZetaMultiple& b) { return a -= b; }
  ZetaMultiple scaled(const Rational& r) const { return {coefficient_ * r, power_}; }

  friend bool operator==(const ZetaMultiple& a, const ZetaMultiple& b) {
    return a.coefficient_ == b.coefficient_ && a.zeta_power() == b.zeta_power();
  }

 private:
  Rational coefficient_;
  int power_ = 0;
};

std::ostream& operator<<(std::ostream& os, const ZetaMultiple& z);

/// sum over squarefree k | e3 with (k, e1e4) = 1 of
///   mu(k) phi*(e3e4) / (k phi*(gcd(e3, k e2)))
Rational theta0(const EtaTuple& e);
/// theta0 phi*(e1e2e3) / zeta(2) prod_{p | e1e2e3e4} (1 - 1/p^2)^{-1}
ZetaMultiple theta1a(const EtaTuple& e);
/// theta1a phi*(e1e2e3e4)
ZetaMultiple theta2a(const EtaTuple& e);
/// theta0 phi*(e1e2e3e4)
Rational theta1b(const EtaTuple& e);
/// theta1b phi*(e1e2e3) / zeta(2) prod_{p | e1e2e3e4} (1 - 1/p^2)^{-1}
ZetaMultiple theta2b(const EtaTuple& e);

/// The closed form of the final density; 0 unless (e1,e2) = (e1,e4) =
/// (e2,e4) = 1.
ZetaMultiple theta(const EtaTuple& e);

struct ExponentVector {
  std::array<int, 4> k{};
  friend bool operator==(const ExponentVector&, const ExponentVector&) = default;
};

inline constexpr ExponentVector kLowerExponents{{2, 2, 3, 2}};
inline constexpr ExponentVector kUpperExponents{{3, 3, 4, 2}};

/// e1^k1 e2^k2 e3^k3 e4^k4, saturated at limit + 1.
u64 weighted_norm(const EtaTuple& e, const ExponentVector& k, u64 limit);

/// sum of theta(eta) / (e1e2e3e4) over eta with weighted_norm(eta, k) = n.
ZetaMultiple delta_k(const ExponentVector& k, u64 n);

/// sum_{n <= t} Delta_k(n), by enumerating eta with weighted_norm <= t.
ZetaMultiple summatory_M(const ExponentVector& k, u64 t);

/// Same sum, accumulated over n = 1..t through delta_k.
ZetaMultiple summatory_M_by_n(const ExponentVector& k, u64 t);

/// Closed form of F_{k,p}(s). Throws std::domain_error if some k_j s + 1 <= 0.
double local_factor(const ExponentVector& k, u64 p, double s);

/// F_{k,p}(0) in exact arithmetic.
Rational local_factor_at_zero(u64 p);

/// theta(p^a, p^b, p^c, p^d) with zeta(2)^{-1} replaced by its p-part
/// (1 - 1/p^2).
Rational theta_local(u64 p, int a, int b, int c, int d);

struct LocalSum {
  double value = 0;
  /// Bound on the omitted terms, using |theta_local| <= 1.
  double truncation_bound = 0;
  /// max |theta_local| over the summed box.
  double max_coefficient = 0;
};

/// sum over 0 <= a, b, c, d <= max_exponent of
///   theta_local(p, a, b, c, d) p^{-(k1 s + 1) a - ... - (k4 s + 1) d}.
LocalSum local_factor_bruteforce(const ExponentVector& k, u64 p, double s, int max_exponent = 12);

/// Per-prime factor of G_k(0): (1 - 1/p)^5 (1 + 5/p + 1/p^2).
double gk_zero_factor(u64 p);

/// |F_{k,p}(0) (1 - 1/p)^4 - gk_zero_factor(p)| / gk_zero_factor(p)
double gk_zero_identity_error(const ExponentVector& k, u64 p);

struct MainTerm {
  /// sum over E*(B) of theta(eta) / (e1e2e3e4)
  ZetaMultiple eta_sum;
  /// sum_{n <= B} (Delta_lower(n) - Delta_upper(n)) when requested
  std::optional<ZetaMultiple> delta_sum;
  std::size_t eta_count = 0;
  /// omega * B * eta_sum
  double value = 0;
};

/// E*(B) = { eta : e1^2e2^2e3^3e4^2 <= B < e1^3e2^3e3^4e4^2 }. With
/// check_delta_form the Delta-difference sum is computed too, and a mismatch
/// throws std::logic_error.
MainTerm predicted_main_term(u64 B, double omega, bool check_delta_form = false);

struct ThetaConsistency {
  std::size_t checked = 0;  // tuples with (e1,e2) = (e1,e4) = (e2,e4) = 1
  std::size_t mismatches = 0;
  std::optional<EtaTuple> first_mismatch;
};

/// theta == theta2a == theta2b on every eta in [1, bound]^4 with pairwise
/// coprime e1, e2, e4.
ThetaConsistency check_theta_consistency(i64 bound);

struct LocalOracleCase {
  ExponentVector k;
  u64 p = 0;
  double s = 0;
  double closed = 0;
  LocalSum brute;
  bool ok() const;
};

/// local_factor against local_factor_bruteforce for both exponent vectors,
/// p in {2, 3, 5}, s in {1/2, 1}.
std::vector<LocalOracleCase> check_local_factor_oracle(int max_exponent = 12);

/// n <= n_max with Delta_k(n) < 0. The sign is not asserted anywhere.
std::vector<u64> negative_delta_values(const ExponentVector& k, u64 n_max);

}  // namespace dp5
