#include "dp5/surface.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>

namespace dp5 {

namespace {

using Matrix = std::vector<std::vector<i128>>;

// Fraction-free Gaussian elimination (Bareiss); entries stay integral.
int bareiss_rank(Matrix m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  std::size_t rank = 0;
  i128 prev = 1;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t c = col + 1; c < cols; ++c) {
        m[r][c] = (m[rank][col] * m[r][c] - m[r][col] * m[rank][c]) / prev;
      }
      m[r][col] = 0;
    }
    prev = m[rank][col];
    ++rank;
  }
  return static_cast<int>(rank);
}

i128 det3(const Coords& a, const Coords& b, const Coords& c, int i, int j, int k) {
  auto v = [](const Coords& x, int idx) { return static_cast<i128>(x[idx]); };
  return v(a, i) * (v(b, j) * v(c, k) - v(b, k) * v(c, j)) -
         v(a, j) * (v(b, i) * v(c, k) - v(b, k) * v(c, i)) +
         v(a, k) * (v(b, i) * v(c, j) - v(b, j) * v(c, i));
}

// Calls visit for every primitive point (x0, ..., x5) on S with the given
// x0 > 0 and all |x_i| <= h. x3, x5 and x2 are forced by the third, fourth
// and first quadric.
template <class Visit>
void scan_x0_slice(i64 x0, i64 h, Visit&& visit) {
  for (i64 x1 = -h; x1 <= h; ++x1) {
    for (i64 x4 = -h; x4 <= h; ++x4) {
      const i64 s = x1 + x4;
      const i64 n3 = -x1 * s;
      if (n3 % x0 != 0) continue;
      const i64 x3 = n3 / x0;
      if (std::abs(x3) > h) continue;
      const i64 n5 = -x4 * s;
      if (n5 % x0 != 0) continue;
      const i64 x5 = n5 / x0;
      if (std::abs(x5) > h) continue;
      const i64 n2 = x1 * x5;
      if (n2 % x0 != 0) continue;
      const i64 x2 = n2 / x0;
      if (std::abs(x2) > h) continue;
      const Coords x{x0, x1, x2, x3, x4, x5};
      if (!is_on_surface(x)) continue;
      i64 g = 0;
      for (i64 c : x) g = std::gcd(g, c);
      if (g != 1) continue;
      visit(x);
    }
  }
}

}  // namespace

std::ostream& operator<<(std::ostream& os, const ProjectivePoint& p) {
  os << '(';
  for (std::size_t i = 0; i < 6; ++i) os << (i ? "," : "") << p[i];
  return os << ')';
}

ProjectivePoint normalize(const Coords& raw) {
  i64 g = 0;
  for (i64 c : raw) g = std::gcd(g, c);
  if (g == 0) throw std::invalid_argument("normalize: all coordinates are zero");
  Coords x{};
  for (std::size_t i = 0; i < 6; ++i) x[i] = raw[i] / g;
  const auto first = std::find_if(x.begin(), x.end(), [](i64 c) { return c != 0; });
  if (*first < 0) {
    for (i64& c : x) c = -c;
  }
  return ProjectivePoint(x);
}

std::array<i128, 5> quadric_values(const Coords& c) {
  std::array<i128, 6> x{};
  for (std::size_t i = 0; i < 6; ++i) x[i] = c[i];
  return {
      x[0] * x[2] - x[1] * x[5],
      x[0] * x[2] - x[3] * x[4],
      x[0] * x[3] + x[1] * x[1] + x[1] * x[4],
      x[0] * x[5] + x[1] * x[4] + x[4] * x[4],
      x[3] * x[5] + x[1] * x[2] + x[2] * x[4],
  };
}

bool is_on_surface(const Coords& x) {
  const auto q = quadric_values(x);
  return std::all_of(q.begin(), q.end(), [](i128 v) { return v == 0; });
}

bool is_on_surface(const ProjectivePoint& p) { return is_on_surface(p.coords()); }

i64 height(const ProjectivePoint& p) {
  i64 h = 0;
  for (i64 c : p.coords()) h = std::max(h, std::abs(c));
  return h;
}

int jacobian_rank(const Coords& c) {
  std::array<i128, 6> x{};
  for (std::size_t i = 0; i < 6; ++i) x[i] = c[i];
  Matrix j = {
      {x[2], -x[5], x[0], 0, 0, -x[1]},
      {x[2], 0, x[0], -x[4], -x[3], 0},
      {x[3], 2 * x[1] + x[4], 0, x[0], x[1], 0},
      {x[5], x[4], 0, 0, x[1] + 2 * x[4], x[0]},
      {0, x[2], x[1] + x[4], x[5], x[2], x[3]},
  };
  return bareiss_rank(std::move(j));
}

std::vector<ProjectivePoint> surface_points_at_infinity(i64 max_height) {
  // With x0 = 0 the quadrics read x1x5 = x3x4 = x1(x1+x4) = x4(x1+x4) = 0 and
  // x3x5 + x2(x1+x4) = 0, so x4 = -x1 or x1 = x4 = 0.
  const i64 h = max_height;
  std::set<ProjectivePoint> found;
  auto consider = [&](const Coords& x) {
    if (std::all_of(x.begin(), x.end(), [](i64 c) { return c == 0; })) return;
    if (!is_on_surface(x)) return;
    i64 g = 0;
    for (i64 c : x) g = std::gcd(g, c);
    if (g == 1) found.insert(normalize(x));
  };
  for (i64 x1 = -h; x1 <= h; ++x1) {
    for (i64 x4 = -h; x4 <= h; ++x4) {
      if (x1 * (x1 + x4) != 0 || x4 * (x1 + x4) != 0) continue;
      const i64 x3_lo = (x4 == 0) ? -h : 0;
      const i64 x3_hi = (x4 == 0) ? h : 0;
      for (i64 x3 = x3_lo; x3 <= x3_hi; ++x3) {
        const bool x5_free = (x1 == 0);
        const i64 x5_lo = x5_free ? -h : 0;
        const i64 x5_hi = x5_free ? h : 0;
        for (i64 x5 = x5_lo; x5 <= x5_hi; ++x5) {
          const i64 s = x1 + x4;
          if (s != 0) {
            if ((x3 * x5) % s != 0) continue;
            const i64 x2 = -(x3 * x5) / s;
            if (std::abs(x2) <= h) consider({0, x1, x2, x3, x4, x5});
          } else {
            if (x3 * x5 != 0) continue;
            for (i64 x2 = -h; x2 <= h; ++x2) consider({0, x1, x2, x3, x4, x5});
          }
        }
      }
    }
  }
  return {found.begin(), found.end()};
}

std::vector<ProjectivePoint> surface_points(i64 max_height) {
  std::vector<ProjectivePoint> pts = surface_points_at_infinity(max_height);
  for (i64 x0 = 1; x0 <= max_height; ++x0) {
    scan_x0_slice(x0, max_height, [&](const Coords& x) { pts.push_back(normalize(x)); });
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

std::vector<ProjectivePoint> find_singular_points(i64 search_height) {
  std::vector<ProjectivePoint> out;
  for (const auto& p : surface_points(search_height)) {
    if (jacobian_rank(p.coords()) < 3) out.push_back(p);
  }
  return out;
}

Line::Line(const ProjectivePoint& a, const ProjectivePoint& b) : a_(a), b_(b) {
  std::size_t k = 0;
  i64 g = 0;
  for (int i = 0; i < 6; ++i) {
    for (int j = i + 1; j < 6; ++j) {
      key_[k] = a[i] * b[j] - a[j] * b[i];
      g = std::gcd(g, key_[k]);
      ++k;
    }
  }
  if (g == 0) throw std::invalid_argument("Line: spanning points coincide");
  const auto first = std::find_if(key_.begin(), key_.end(), [](i64 c) { return c != 0; });
  const i64 sign = (*first < 0) ? -1 : 1;
  for (i64& c : key_) c = sign * c / g;
}

bool Line::contains(const Coords& x) const {
  for (int i = 0; i < 6; ++i) {
    for (int j = i + 1; j < 6; ++j) {
      for (int k = j + 1; k < 6; ++k) {
        if (det3(a_.coords(), b_.coords(), x, i, j, k) != 0) return false;
      }
    }
  }
  return true;
}

bool Line::lies_on_surface() const {
  Coords sum{};
  for (std::size_t i = 0; i < 6; ++i) sum[i] = a_[i] + b_[i];
  const auto qa = quadric_values(a_.coords());
  const auto qb = quadric_values(b_.coords());
  const auto qs = quadric_values(sum);
  for (std::size_t i = 0; i < 5; ++i) {
    // Q(s a + t b) = s^2 Q(a) + s t (Q(a+b) - Q(a) - Q(b)) + t^2 Q(b)
    if (qa[i] != 0 || qb[i] != 0 || qs[i] - qa[i] - qb[i] != 0) return false;
  }
  return true;
}

std::vector<Line> find_lines(i64 search_height) {
  if (search_height < 3) throw std::invalid_argument("find_lines: search height must be >= 3");
  const auto pts = surface_points(search_height);
  std::set<std::array<i64, 15>> seen;
  std::vector<Line> lines;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      Line candidate(pts[i], pts[j]);
      if (!seen.insert(candidate.key()).second) continue;
      if (!candidate.lies_on_surface()) continue;
      const auto support = std::count_if(pts.begin(), pts.end(),
                                         [&](const ProjectivePoint& p) { return candidate.contains(p); });
      if (support >= 3) lines.push_back(candidate);
    }
  }
  if (search_height >= 5 && lines.size() != 4) {
    throw std::runtime_error("find_lines: expected 4 lines, found " + std::to_string(lines.size()));
  }
  return lines;
}

const std::vector<Line>& surface_lines() {
  static const std::vector<Line> lines = find_lines(5);
  return lines;
}

bool on_some_line(const Coords& x) {
  const auto& lines = surface_lines();
  return std::any_of(lines.begin(), lines.end(), [&](const Line& l) { return l.contains(x); });
}

bool in_U(const ProjectivePoint& p) { return is_on_surface(p) && !on_some_line(p.coords()); }

void scan_affine_slice(i64 x0, i64 max_height, const std::function<void(const Coords&)>& visit) {
  if (x0 <= 0) throw std::invalid_argument("scan_affine_slice: x0 must be positive");
  scan_x0_slice(x0, max_height, visit);
}

}  // namespace dp5
