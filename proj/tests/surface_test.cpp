#include "doctest.h"

#include <algorithm>
#include <random>

#include "dp5/surface.hpp"

using namespace dp5;

namespace {

ProjectivePoint P(i64 a, i64 b, i64 c, i64 d, i64 e, i64 f) { return normalize({a, b, c, d, e, f}); }

}  // namespace

TEST_SUITE("surface") {

TEST_CASE("is_on_surface") {
  CHECK(is_on_surface(Coords{1, 0, 0, 0, 0, 0}));
  CHECK(is_on_surface(Coords{1, 1, -2, 1, -2, -2}));
  CHECK_FALSE(is_on_surface(Coords{1, 1, 1, 1, 1, 1}));
}

TEST_CASE("normalize") {
  CHECK(P(2, 0, 0, 0, -2, -2).coords() == Coords{1, 0, 0, 0, -1, -1});
  CHECK(P(-1, 1, 0, 1, 0, 0).coords() == Coords{1, -1, 0, -1, 0, 0});
  CHECK(P(3, 6, 9, 0, 0, 0).coords() == Coords{1, 2, 3, 0, 0, 0});
  CHECK(P(0, 0, -4, 0, 0, 6).coords() == Coords{0, 0, 2, 0, 0, -3});
  CHECK_THROWS_AS(P(0, 0, 0, 0, 0, 0), std::invalid_argument);
}

TEST_CASE("normalize is idempotent and scale invariant") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<i64> d(-50, 50);
  for (int i = 0; i < 5000; ++i) {
    Coords x{d(rng), d(rng), d(rng), d(rng), d(rng), d(rng)};
    if (std::all_of(x.begin(), x.end(), [](i64 v) { return v == 0; })) continue;
    const ProjectivePoint p = normalize(x);
    CHECK(normalize(p.coords()) == p);
    Coords y = x;
    for (auto& v : y) v *= -7;
    CHECK(normalize(y) == p);
  }
}

TEST_CASE("height") {
  CHECK(height(P(1, 0, 0, 0, -1, -1)) == 1);
  CHECK(height(P(1, 1, -2, 1, -2, -2)) == 2);
  CHECK(height(P(1, 0, 0, 0, 0, 0)) == 1);
}

TEST_CASE("singular points") {
  const auto s1 = find_singular_points(1);
  REQUIRE(s1.size() == 1);
  CHECK(s1[0] == P(0, 0, 1, 0, 0, 0));
  CHECK(jacobian_rank({0, 0, 1, 0, 0, 0}) == 2);
  CHECK(jacobian_rank({1, 0, 0, 0, 0, 0}) == 3);
  const auto s5 = find_singular_points(5);
  REQUIRE(s5.size() == 1);
  CHECK(s5[0] == P(0, 0, 1, 0, 0, 0));
}

TEST_CASE("lines") {
  const auto lines = find_lines(5);
  CHECK(lines.size() == 4);
  const Line l1(P(0, 0, 1, 0, 0, 0), P(0, 0, 0, 0, 0, 1));
  const Line l2(P(1, 0, 0, 0, 0, 0), P(0, 1, 0, 0, -1, 0));
  CHECK(l1.lies_on_surface());
  CHECK(l2.lies_on_surface());
  CHECK(std::find(lines.begin(), lines.end(), l1) != lines.end());
  CHECK(std::find(lines.begin(), lines.end(), l2) != lines.end());
  const Line not_on(P(1, 0, 0, 0, 0, 0), P(1, 1, -2, 1, -2, -2));
  CHECK_FALSE(not_on.lies_on_surface());
  for (const auto& l : lines) CHECK(l.lies_on_surface());
  CHECK(find_lines(8).size() == 4);
}

TEST_CASE("every point at x0 = 0 lies on a line") {
  const auto pts = surface_points_at_infinity(100);
  CHECK(!pts.empty());
  for (const auto& p : pts) {
    CHECK(is_on_surface(p));
    CHECK(on_some_line(p.coords()));
  }
}

TEST_CASE("in_U") {
  CHECK_FALSE(in_U(P(1, 0, 0, 0, 0, 0)));
  CHECK(in_U(P(1, 1, -2, 1, -2, -2)));
  CHECK_FALSE(in_U(P(0, 0, 1, 0, 0, 0)));
}

TEST_CASE("surface_points agrees with the affine scan") {
  const auto pts = surface_points(6);
  for (const auto& p : pts) {
    CHECK(is_on_surface(p));
    CHECK(height(p) <= 6);
  }
  CHECK(std::is_sorted(pts.begin(), pts.end()));
  CHECK(std::adjacent_find(pts.begin(), pts.end()) == pts.end());
}

TEST_CASE("surface_points matches a full box search") {
  const i64 H = 3;
  std::vector<ProjectivePoint> brute;
  Coords x{};
  for (x[0] = -H; x[0] <= H; ++x[0])
    for (x[1] = -H; x[1] <= H; ++x[1])
      for (x[2] = -H; x[2] <= H; ++x[2])
        for (x[3] = -H; x[3] <= H; ++x[3])
          for (x[4] = -H; x[4] <= H; ++x[4])
            for (x[5] = -H; x[5] <= H; ++x[5]) {
              if (x == Coords{} || !is_on_surface(x)) continue;
              const auto p = normalize(x);
              if (p.coords() == x) brute.push_back(p);
            }
  std::sort(brute.begin(), brute.end());
  CHECK(brute == surface_points(H));
}

}
