#pragma once

// The quintic del Pezzo surface S in P^5 cut out by five quadrics, its
// height, lines and singular locus.

#include <array>
#include <compare>
#include <functional>
#include <span>
#include <vector>

#include "dp5/arith.hpp"

namespace dp5 {

using Coords = std::array<i64, 6>;

/// Rational point of P^5 with coprime integer coordinates whose first nonzero
/// entry is positive. Only constructible through normalize().
class ProjectivePoint {
 public:
  const Coords& coords() const { return x_; }
  i64 operator[](std::size_t i) const { return x_[i]; }

  friend auto operator<=>(const ProjectivePoint&, const ProjectivePoint&) = default;
  friend bool operator==(const ProjectivePoint&, const ProjectivePoint&) = default;

 private:
  explicit ProjectivePoint(const Coords& x) : x_(x) {}
  Coords x_{};
  friend ProjectivePoint normalize(const Coords& raw);
};

std::ostream& operator<<(std::ostream& os, const ProjectivePoint& p);

/// Divides by the gcd and flips the sign so the first nonzero coordinate is
/// positive. Throws std::invalid_argument on the zero vector.
ProjectivePoint normalize(const Coords& raw);

/// The five quadrics
///   x0x2 - x1x5, x0x2 - x3x4, x0x3 + x1^2 + x1x4,
///   x0x5 + x1x4 + x4^2, x3x5 + x1x2 + x2x4
/// evaluated in 128-bit arithmetic.
std::array<i128, 5> quadric_values(const Coords& x);

bool is_on_surface(const Coords& x);
bool is_on_surface(const ProjectivePoint& p);

/// max_i |x_i|
i64 height(const ProjectivePoint& p);

/// Exact rank of the 5x6 Jacobian matrix of the quadrics at x.
int jacobian_rank(const Coords& x);

/// Every point of S(Q) with height <= max_height, including points on lines.
/// Sorted ascending.
std::vector<ProjectivePoint> surface_points(i64 max_height);

/// Calls visit for every point on S with the given x0 > 0, coprime
/// coordinates and all |x_i| <= max_height.
void scan_affine_slice(i64 x0, i64 max_height, const std::function<void(const Coords&)>& visit);

/// Points of S with x0 = 0 and height <= max_height, found by solving the
/// quadrics with x0 = 0 directly. Sorted ascending.
std::vector<ProjectivePoint> surface_points_at_infinity(i64 max_height);

/// Points of height <= search_height where the Jacobian has rank < 3.
std::vector<ProjectivePoint> find_singular_points(i64 search_height);

/// A projective line spanned by two points of S.
class Line {
 public:
  Line(const ProjectivePoint& a, const ProjectivePoint& b);

  const ProjectivePoint& first() const { return a_; }
  const ProjectivePoint& second() const { return b_; }

  /// Plücker coordinates (all 2x2 minors), normalized; identifies the line.
  const std::array<i64, 15>& key() const { return key_; }

  /// True iff x lies in the span of the two points.
  bool contains(const Coords& x) const;
  bool contains(const ProjectivePoint& p) const { return contains(p.coords()); }

  /// True iff every quadric vanishes identically on s*a + t*b.
  bool lies_on_surface() const;

  friend bool operator==(const Line& l, const Line& r) { return l.key_ == r.key_; }

 private:
  ProjectivePoint a_;
  ProjectivePoint b_;
  std::array<i64, 15> key_{};
};

/// Lines contained in S found from the points of height <= search_height:
/// every pair of points spans a candidate, candidates supported by at least
/// three collinear points are kept if the quadrics vanish identically on them.
/// Throws std::runtime_error if search_height >= 5 and the count is not 4.
std::vector<Line> find_lines(i64 search_height);

/// The four lines of S, computed once at search height 5.
const std::vector<Line>& surface_lines();

bool on_some_line(const Coords& x);

/// p lies on S and on none of its lines.
bool in_U(const ProjectivePoint& p);

}  // namespace dp5
