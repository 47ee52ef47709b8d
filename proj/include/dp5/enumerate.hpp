#pragma once

// Two independent exact counting engines for N_{U,H}(B): a direct search on
// the surface equations and an enumeration of integral points on the
// universal torsor.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dp5/surface.hpp"
#include "dp5/torsor.hpp"

namespace dp5 {

/// Largest B accepted by the direct search.
inline constexpr i64 kNaiveFeasibilityBound = 500;

struct CountOptions {
  unsigned workers = 1;
  bool retain_points = false;
  std::size_t retention_cap = 1'000'000;
};

struct CountResult {
  u64 count = 0;
  /// Sorted image points when retention was requested; complete only if
  /// points_complete is set (the cap was not hit).
  std::vector<ProjectivePoint> points;
  bool points_complete = false;
  double seconds = 0;
};

/// Searches x0 = 1..B and x1, x4 in [-B, B]; the remaining coordinates are
/// forced by the quadrics. Points with x0 = 0 are enumerated separately and
/// must all lie on lines (std::logic_error otherwise).
/// Throws std::invalid_argument unless 1 <= B <= kNaiveFeasibilityBound.
CountResult count_naive(i64 B, const CountOptions& opts = {});

/// Counts torsor points with H(psi) <= B satisfying the reduced coprimality
/// conditions. alpha2 is solved from the torsor equation.
/// Throws std::invalid_argument for B < 1.
CountResult count_torsor(i64 B, const CountOptions& opts = {});

struct SplitCounts {
  u64 na = 0;   // eta5 >= |eta6|
  u64 nb1 = 0;  // eta5 < |eta6|, e1^2 e2^2 e3^3 e4^2 <= B / (log B)^A
  u64 nb2 = 0;  // the rest
  u64 total() const { return na + nb1 + nb2; }
  friend bool operator==(const SplitCounts&, const SplitCounts&) = default;
};

/// Throws std::invalid_argument unless B >= 3 and A > 0.
SplitCounts count_split(i64 B, double A, const CountOptions& opts = {});

struct BijectionReport {
  bool ok = false;
  u64 naive_count = 0;
  u64 torsor_count = 0;
  std::string message;
};

/// Compares the torsor image set with the direct search set and checks the
/// torsor images are pairwise distinct.
BijectionReport verify_bijection(i64 B, const CountOptions& opts = {});

struct HeightBoundReport {
  u64 solutions = 0;
  u64 violations = 0;
};

/// Checks e1e2e3^2e4^2e5^2|e6| <= 2B and e3e4^2e5^3e6^2 <= 2B on every
/// counted solution, without using them for pruning.
HeightBoundReport check_height_bounds(i64 B, const CountOptions& opts = {});

/// Calls visit(worker, t) for every counted torsor point. Each worker index
/// is used by one thread at a time.
void for_each_torsor_solution(i64 B, unsigned workers,
                              const std::function<void(unsigned, const TorsorPoint&)>& visit);

/// DP5_WORKERS if set, otherwise the hardware concurrency (at least 1).
unsigned default_workers();

struct CountReport {
  i64 B = 0;
  std::string method;
  u64 count = 0;
  std::optional<SplitCounts> split;
  std::optional<double> main_term;
  std::optional<double> seconds;

  std::optional<double> ratio() const;
};

/// "B,method,count,na,nb1,nb2,main_term,ratio,seconds"
std::string csv_header();
/// Absent fields are left empty.
std::string to_csv_row(const CountReport& r);
/// Same fields as the CSV row; absent fields are null.
std::string to_json(const CountReport& r);

}  // namespace dp5
