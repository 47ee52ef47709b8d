#pragma once

// Archimedean density: the height function h, the g-family of integrals,
// G2, omega_infinity, the Euler product and the leading constant.

#include <stdexcept>
#include <string>
#include <vector>

#include "dp5/arith.hpp"
#include "dp5/torsor.hpp"

namespace dp5 {

struct QuadratureResult {
  double value = 0;
  double error = 0;  // >= 0
  std::size_t evaluations = 0;
};

/// Raised when a quadrature misses its requested relative tolerance.
class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Default relative tolerance for the triple integrals.
inline constexpr double kDefaultTolerance = 1e-3;

/// max{ |t0^4 t5|, |t0^4 t1|, |t1 t5^2 t6^2 + t0^2 t1^2 t6|, |t0^2 t1 t5 t6|,
///      |t0^2 t5^2 t6 + t0^4 t1|, |t5^3 t6^2 + t0^2 t1 t5 t6| }
double h_max(double t0, double t1, double t5, double t6);

/// Box containing {h(t0, .) <= 1, t5 > 0}:
/// |t1| <= t0^-4, 0 < t5 <= t0^-4, t5^3 t6^2 <= 2.
struct RegionBounds {
  double t1_max = 1;
  double t5_max = 1;
  double t5_cube_t6_sq_max = 2;

  double t6_max(double t5) const;
  bool contains(double t1, double t5, double t6) const;
};

RegionBounds region_bounds(double t0);

/// Length of {t1 : h(t0, t1, t5, t6) <= 1}. Each of the six constraints is a
/// quadratic inequality in t1, so the set is a finite union of intervals whose
/// endpoints are computed in closed form.
double g0(double t0, double t5, double t6);

/// Same measure by bisection of [-t0^-4, t0^-4]: cells are kept or dropped
/// only when a Taylor bound on every constraint decides them. Absolute error
/// is of order abs_tol. Slow; kept as a cross-check of g0.
double g0_subdivision(double t0, double t5, double t6, double abs_tol = 1e-8);

/// Integral of g0 over t5 > 0 with Y5 t5 >= |Y6 t6|.
QuadratureResult g1a(double t0, double t6, const ScalingContext& ctx, double tol = kDefaultTolerance);

/// Integral of g0 over |Y6 t6| > max(Y5 t5, 1).
QuadratureResult g1b(double t0, double t5, const ScalingContext& ctx, double tol = kDefaultTolerance);

struct GFamily {
  QuadratureResult g2a;     // integral of g1a over |Y6 t6| > 1
  QuadratureResult g2b;     // integral of g1b over t5 > 0
  QuadratureResult g2_sum;  // g2a + g2b
  QuadratureResult g2;      // direct triple integral over h <= 1, |Y6 t6| > 1, t5 > 0
};

/// Throws NonConvergence if any component misses tol.
GFamily g_family(double t0, const ScalingContext& ctx, double tol = kDefaultTolerance);

/// Volume of {h(t0, t1, t5, t6) <= 1, t5 > 0}. Uses t5 = v^4, t6 = u v^-6
/// (u = t5^{3/2} t6), u = +-w^2, which leaves a bounded integrand on a box.
QuadratureResult G2(double t0, double tol = kDefaultTolerance);

/// The archimedean density at t0 = 1, integrated in the opposite order
/// (t6 outer, t5 inner) from G2.
QuadratureResult omega_infty(double tol = kDefaultTolerance);

struct ScalingCheck {
  std::vector<double> t0;
  std::vector<QuadratureResult> G2;  // G2(t0[i])
  QuadratureResult omega;
  double spread = 0;        // (max - min) / min of t0^2 G2(t0)
  double omega_gap = 0;     // |omega - G2(1)|
  double omega_allowed = 0; // omega.error + G2(1).error
  bool ok(double max_spread = 0.01) const { return spread <= max_spread && omega_gap <= omega_allowed; }
};

/// t0^2 G2(t0) over t0 in {1, 1.25, 1.5, 2}, and omega_infty against G2(1).
ScalingCheck check_G2_scaling(double tol = kDefaultTolerance);

/// (1 - 1/p)^5 (1 + 5/p + 1/p^2)
double euler_factor(u64 p);
Rational euler_factor_exact(u64 p);

struct EulerProduct {
  double value = 1;
  /// Upper bound for value minus the infinite product; the factors satisfy
  /// |log f(p)| <= 15/p^2, so the tail is at least exp(-15/p_max).
  double tail_bound = 0;
  u64 p_max = 0;
  std::size_t primes = 0;
};

/// Product of euler_factor over primes <= p_max. Throws for p_max < 2.
EulerProduct euler_product(u64 p_max);

/// (1/4!) (1/(2^3*3) - 1/(2*3^2*4)), checked to equal 1/864.
Rational alpha_constant();

struct PeyreConstant {
  Rational alpha;
  EulerProduct euler;
  QuadratureResult omega;
  double value = 0;
  double error = 0;  // quadrature error plus Euler tail, propagated linearly
};

PeyreConstant peyre_constant(double tol = kDefaultTolerance, u64 p_max = 1'000'000);

/// Empirical suprema over a sample grid of
///   g0 * t0 |t6|^{1/2},
///   (int g0 dt5) / min(t0^{-1/2} |t6|^{-5/4}, t0^{-8}),
///   (int g0 dt6) * t0 t5^{3/4}.
/// Finite values indicate the expected decay; nothing is asserted.
struct DecayDiagnostics {
  double g0_ratio = 0;
  double g1a_ratio = 0;
  double g1b_ratio = 0;
};

DecayDiagnostics decay_diagnostics();

}  // namespace dp5
