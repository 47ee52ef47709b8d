#include "dp5/density.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <sstream>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

namespace dp5 {

namespace {

constexpr std::size_t kMaxIntervals = 4000;
// Inner integrals are solved this much tighter than the outer one, and the
// outer one aims at this share of the requested tolerance, so that outer
// error plus inner_tol * |value| stays below tol * |value|.
constexpr double kInnerTighten = 0.05;
constexpr double kOuterShare = 0.9;

template <class F>
double trampoline(double x, void* p) {
  return (*static_cast<F*>(p))(x);
}

// Globally adaptive Gauss-Kronrod (21 point). Handles the jumps of g0 without
// refining the whole range.
template <class F>
QuadratureResult integrate(F&& f, double a, double b, double tol) {
  static const bool quiet = (gsl_set_error_handler_off(), true);
  (void)quiet;
  QuadratureResult r;
  if (!(b > a)) return r;
  auto counted = [&](double x) {
    ++r.evaluations;
    return f(x);
  };
  using Counted = decltype(counted);
  gsl_function fn{&trampoline<Counted>, &counted};
  std::unique_ptr<gsl_integration_workspace, decltype(&gsl_integration_workspace_free)> ws(
      gsl_integration_workspace_alloc(kMaxIntervals), &gsl_integration_workspace_free);
  double err = 0;
  const int status =
      gsl_integration_qag(&fn, a, b, 0.0, tol, kMaxIntervals, GSL_INTEG_GAUSS21, ws.get(), &r.value, &err);
  r.error = std::abs(err);
  if (status != GSL_SUCCESS) r.error = std::max(r.error, 2 * tol * std::abs(r.value));
  return r;
}

// Adds the error carried by the inner integrals of a nested quadrature.
QuadratureResult with_inner_error(QuadratureResult r, double inner_tol, std::size_t inner_evals) {
  r.error += inner_tol * std::abs(r.value);
  r.evaluations += inner_evals;
  return r;
}

void require_converged(const QuadratureResult& r, double tol, const char* what) {
  if (!std::isfinite(r.value) || r.error > tol * std::abs(r.value) + 1e-14) {
    std::ostringstream msg;
    msg << what << ": quadrature did not converge (value " << r.value << ", error " << r.error << ")";
    throw NonConvergence(msg.str());
  }
}

struct Quadratic {
  double a, b, c;
};

// Real roots of a x^2 + b x + c = rhs.
void push_roots(const Quadratic& q, double rhs, std::vector<double>& out) {
  const double c = q.c - rhs;
  if (q.a == 0) {
    if (q.b != 0) out.push_back(-c / q.b);
    return;
  }
  const double disc = q.b * q.b - 4 * q.a * c;
  if (disc < 0) return;
  const double s = std::sqrt(disc);
  const double k = -0.5 * (q.b + std::copysign(s, q.b));
  if (k == 0) {
    out.push_back(0.0);
    return;
  }
  out.push_back(k / q.a);
  out.push_back(c / k);
}

}  // namespace

double h_max(double t0, double t1, double t5, double t6) {
  const double t02 = t0 * t0;
  const double t04 = t02 * t02;
  const std::array<double, 6> terms = {
      std::abs(t04 * t5),
      std::abs(t04 * t1),
      std::abs(t1 * t5 * t5 * t6 * t6 + t02 * t1 * t1 * t6),
      std::abs(t02 * t1 * t5 * t6),
      std::abs(t02 * t5 * t5 * t6 + t04 * t1),
      std::abs(t5 * t5 * t5 * t6 * t6 + t02 * t1 * t5 * t6),
  };
  return *std::max_element(terms.begin(), terms.end());
}

double RegionBounds::t6_max(double t5) const {
  if (t5 <= 0) return INFINITY;
  return std::sqrt(t5_cube_t6_sq_max / (t5 * t5 * t5));
}

bool RegionBounds::contains(double t1, double t5, double t6) const {
  return std::abs(t1) <= t1_max && t5 > 0 && t5 <= t5_max && t5 * t5 * t5 * t6 * t6 <= t5_cube_t6_sq_max;
}

RegionBounds region_bounds(double t0) {
  const double inv = 1.0 / (t0 * t0 * t0 * t0);
  return {inv, inv, 2.0};
}

double g0(double t0, double t5, double t6) {
  const double t02 = t0 * t0;
  const double t04 = t02 * t02;
  if (std::abs(t04 * t5) > 1) return 0;
  const double lim = 1.0 / t04;
  // The four constraints besides |t0^4 t5| <= 1 and |t0^4 t1| <= 1.
  const std::array<Quadratic, 4> constraints = {{
      {t02 * t6, t5 * t5 * t6 * t6, 0},
      {0, t02 * t5 * t6, 0},
      {0, t04, t02 * t5 * t5 * t6},
      {0, t02 * t5 * t6, t5 * t5 * t5 * t6 * t6},
  }};
  std::vector<double> cuts = {-lim, lim};
  cuts.reserve(18);
  for (const auto& q : constraints) {
    push_roots(q, 1.0, cuts);
    push_roots(q, -1.0, cuts);
  }
  std::sort(cuts.begin(), cuts.end());
  double length = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = std::max(cuts[i], -lim);
    const double hi = std::min(cuts[i + 1], lim);
    if (!(hi > lo)) continue;
    if (h_max(t0, 0.5 * (lo + hi), t5, t6) <= 1) length += hi - lo;
  }
  return length;
}

double g0_subdivision(double t0, double t5, double t6, double abs_tol) {
  const double t02 = t0 * t0;
  const double t04 = t02 * t02;
  if (std::abs(t04 * t5) > 1) return 0;
  const double lim = 1.0 / t04;
  // The constraints as A t1^2 + B t1 + C; a cell is decided only when a
  // Taylor bound around its centre certifies it, otherwise it is bisected.
  const std::array<Quadratic, 5> q = {{
      {0, t04, 0},
      {t02 * t6, t5 * t5 * t6 * t6, 0},
      {0, t02 * t5 * t6, 0},
      {0, t04, t02 * t5 * t5 * t6},
      {0, t02 * t5 * t6, t5 * t5 * t5 * t6 * t6},
  }};
  const double min_width = abs_tol / 32;
  double total = 0;
  auto refine = [&](auto&& self, double lo, double hi) -> void {
    const double m = 0.5 * (lo + hi);
    const double r = 0.5 * (hi - lo);
    bool all_in = true;
    for (const auto& c : q) {
      const double v = std::abs((c.a * m + c.b) * m + c.c);
      const double spread = std::abs(2 * c.a * m + c.b) * r + std::abs(c.a) * r * r;
      if (v - spread > 1) return;
      if (v + spread > 1) all_in = false;
    }
    if (all_in) {
      total += hi - lo;
    } else if (hi - lo < min_width) {
      total += r;
    } else {
      self(self, lo, m);
      self(self, m, hi);
    }
  };
  refine(refine, -lim, lim);
  return total;
}

QuadratureResult g1a(double t0, double t6, const ScalingContext& ctx, double tol) {
  const auto box = region_bounds(t0);
  const double lo = std::abs(ctx.Y6 * t6) / ctx.Y5;
  double hi = box.t5_max;
  if (t6 != 0) hi = std::min(hi, std::cbrt(box.t5_cube_t6_sq_max / (t6 * t6)));
  return integrate([&](double t5) { return g0(t0, t5, t6); }, lo, hi, tol);
}

QuadratureResult g1b(double t0, double t5, const ScalingContext& ctx, double tol) {
  const auto box = region_bounds(t0);
  if (!(t5 > 0) || t5 > box.t5_max) return {};
  const double lo = std::max(ctx.Y5 * t5, 1.0) / ctx.Y6;
  const double hi = box.t6_max(t5);
  // t6 = +-w^2 removes the |t6|^{-1/2} decay of g0.
  return integrate([&](double w) { return 2 * w * (g0(t0, t5, w * w) + g0(t0, t5, -w * w)); }, std::sqrt(lo),
                   std::sqrt(hi), tol);
}

namespace {

// Integral over v in (0, 1/t0], w in (w_min(v), 2^{1/4}] of
// 8 w v^-3 (g0(t0, v^4, w^2 v^-6) + g0(t0, v^4, -w^2 v^-6)),
// i.e. t5 = v^4 and t6 = +-w^2 v^-6.
template <class LowerW>
QuadratureResult substituted_volume(double t0, double tol, LowerW&& w_min) {
  const double inner_tol = tol * kInnerTighten;
  const double w_max = std::pow(2.0, 0.25);
  std::size_t inner_evals = 0;
  auto outer = [&](double v) {
    const double t5 = v * v * v * v;
    const double v3 = v * v * v;
    auto inner = [&](double w) {
      const double t6 = w * w / (v3 * v3);
      return 8 * w / v3 * (g0(t0, t5, t6) + g0(t0, t5, -t6));
    };
    const auto r = integrate(inner, std::min(w_min(v), w_max), w_max, inner_tol);
    inner_evals += r.evaluations;
    return r.value;
  };
  auto r = integrate(outer, 0.0, 1.0 / t0, tol * kOuterShare);
  return with_inner_error(r, inner_tol, inner_evals);
}

}  // namespace

GFamily g_family(double t0, const ScalingContext& ctx, double tol) {
  const double inner_tol = tol * kInnerTighten;
  const auto box = region_bounds(t0);
  GFamily out;

  // g2a: t6 outer on both half-lines 1/Y6 < |t6| < t6_end.
  const double t6_end =
      std::min(ctx.Y5 * box.t5_max / ctx.Y6, std::pow(std::cbrt(box.t5_cube_t6_sq_max) * ctx.Y5 / ctx.Y6, 0.6));
  {
    std::size_t inner_evals = 0;
    auto f = [&](double t6) {
      const auto pos = g1a(t0, t6, ctx, inner_tol);
      const auto neg = g1a(t0, -t6, ctx, inner_tol);
      inner_evals += pos.evaluations + neg.evaluations;
      return pos.value + neg.value;
    };
    out.g2a = with_inner_error(integrate(f, 1.0 / ctx.Y6, t6_end, tol * kOuterShare), inner_tol, inner_evals);
  }

  // g2b: t5 = v^4 outer.
  {
    std::size_t inner_evals = 0;
    auto f = [&](double v) {
      const auto r = g1b(t0, v * v * v * v, ctx, inner_tol);
      inner_evals += r.evaluations;
      return 4 * v * v * v * r.value;
    };
    out.g2b = with_inner_error(integrate(f, 0.0, std::sqrt(std::sqrt(box.t5_max)), tol * kOuterShare), inner_tol, inner_evals);
  }

  out.g2_sum.value = out.g2a.value + out.g2b.value;
  out.g2_sum.error = out.g2a.error + out.g2b.error;
  out.g2_sum.evaluations = out.g2a.evaluations + out.g2b.evaluations;

  // |Y6 t6| > 1  <=>  w > v^3 / sqrt(Y6)
  const double root_y6 = std::sqrt(ctx.Y6);
  out.g2 = substituted_volume(t0, tol, [&](double v) { return v * v * v / root_y6; });

  require_converged(out.g2a, tol, "g2a");
  require_converged(out.g2b, tol, "g2b");
  require_converged(out.g2, tol, "g2");
  return out;
}

QuadratureResult G2(double t0, double tol) {
  if (!(t0 > 0)) throw std::invalid_argument("G2: t0 must be positive");
  auto r = substituted_volume(t0, tol, [](double) { return 0.0; });
  require_converged(r, tol, "G2");
  return r;
}

QuadratureResult omega_infty(double tol) {
  if (!(tol > 0)) throw std::invalid_argument("omega_infty: tolerance must be positive");
  const double inner_tol = tol * kInnerTighten;
  std::size_t inner_evals = 0;
  auto slice = [&](double t6) {
    const double t5_end = (t6 == 0) ? 1.0 : std::min(1.0, std::cbrt(2.0 / (t6 * t6)));
    const auto r = integrate([&](double t5) { return g0(1.0, t5, t6); }, 0.0, t5_end, inner_tol);
    inner_evals += r.evaluations;
    return r.value;
  };
  // |t6| <= 1 directly; |t6| > 1 through t6 = +-z^-12. The slices decay like
  // |t6|^{-5/4}, so the tail integrand is O(z^2).
  const auto core = integrate(slice, -1.0, 1.0, tol * kOuterShare);
  const auto tail = integrate(
      [&](double z) {
        const double z3 = z * z * z;
        const double z12 = z3 * z3 * z3 * z3;
        const double t6 = 1.0 / z12;
        return 12 * t6 / z * (slice(t6) + slice(-t6));
      },
      0.0, 1.0, tol * kOuterShare);
  QuadratureResult r;
  r.value = core.value + tail.value;
  r.error = core.error + tail.error;
  r.evaluations = core.evaluations + tail.evaluations;
  r = with_inner_error(r, inner_tol, inner_evals);
  require_converged(r, tol, "omega_infty");
  return r;
}

double euler_factor(u64 p) {
  const double x = 1.0 / static_cast<double>(p);
  return std::pow(1 - x, 5) * (1 + 5 * x + x * x);
}

Rational euler_factor_exact(u64 p) {
  const auto pp = static_cast<i64>(p);
  Rational one_minus(pp - 1, pp);
  Rational r = one_minus * one_minus * one_minus * one_minus * one_minus;
  return r * Rational(pp * pp + 5 * pp + 1, pp * pp);
}

EulerProduct euler_product(u64 p_max) {
  if (p_max < 2) throw std::invalid_argument("euler_product: p_max must be >= 2");
  EulerProduct e;
  e.p_max = p_max;
  double log_sum = 0;
  for (u64 p : primes_up_to(p_max)) {
    log_sum += std::log(euler_factor(p));
    ++e.primes;
  }
  e.value = std::exp(log_sum);
  e.tail_bound = e.value * -std::expm1(-15.0 / static_cast<double>(p_max));
  return e;
}

Rational alpha_constant() {
  const Rational inner = Rational(1, 2 * 2 * 2 * 3) - Rational(1, 2 * 3 * 3 * 4);
  const Rational alpha = Rational(1, 1 * 2 * 3 * 4) * inner;
  if (!(alpha == Rational(1, 864))) throw std::logic_error("alpha_constant: expected 1/864, got " + alpha.str());
  return alpha;
}

PeyreConstant peyre_constant(double tol, u64 p_max) {
  PeyreConstant c;
  c.alpha = alpha_constant();
  c.euler = euler_product(p_max);
  c.omega = omega_infty(tol);
  const double a = c.alpha.to_double();
  c.value = a * c.euler.value * c.omega.value;
  c.error = a * (c.euler.value * c.omega.error + c.euler.tail_bound * c.omega.value);
  return c;
}

DecayDiagnostics decay_diagnostics() {
  DecayDiagnostics d;

  const double t0s[] = {0.5, 1.0, 2.0};
  const double t5s[] = {1e-4, 1e-3, 1e-2, 0.1, 0.5};
  const double t6s[] = {0.1, 1.0, 10.0, 100.0, 1000.0};
  for (double t0 : t0s) {
    const auto box = region_bounds(t0);
    for (double t6 : t6s) {
      for (double t5 : t5s) {
        d.g0_ratio = std::max(d.g0_ratio, g0(t0, t5 * box.t5_max, t6) * t0 * std::sqrt(t6));
      }
      double hi = std::min(box.t5_max, std::cbrt(2 / (t6 * t6)));
      const double full = integrate([&](double t5) { return g0(t0, t5, t6); }, 0.0, hi, 1e-6).value;
      const double bound = std::min(1 / (std::sqrt(t0) * std::pow(t6, 1.25)), std::pow(t0, -8));
      d.g1a_ratio = std::max(d.g1a_ratio, full / bound);
    }
    for (double t5 : t5s) {
      const double s = t5 * box.t5_max;
      const double w_hi = std::sqrt(box.t6_max(s));
      const double full =
          integrate([&](double w) { return 2 * w * (g0(t0, s, w * w) + g0(t0, s, -w * w)); }, 0.0, w_hi, 1e-6)
              .value;
      d.g1b_ratio = std::max(d.g1b_ratio, full * t0 * std::pow(s, 0.75));
    }
  }

  return d;
}

ScalingCheck check_G2_scaling(double tol) {
  ScalingCheck out;
  out.t0 = {1.0, 1.25, 1.5, 2.0};
  double lo = 0, hi = 0;
  for (std::size_t i = 0; i < out.t0.size(); ++i) {
    const double t0 = out.t0[i];
    out.G2.push_back(G2(t0, tol));
    const double scaled = t0 * t0 * out.G2.back().value;
    lo = i == 0 ? scaled : std::min(lo, scaled);
    hi = i == 0 ? scaled : std::max(hi, scaled);
  }
  out.spread = (hi - lo) / lo;
  out.omega = omega_infty(tol);
  out.omega_gap = std::abs(out.omega.value - out.G2[0].value);
  out.omega_allowed = out.omega.error + out.G2[0].error;
  return out;
}

}  // namespace dp5
