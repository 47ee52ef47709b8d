#include "doctest.h"

#include <algorithm>

#include "dp5/enumerate.hpp"

using namespace dp5;

TEST_SUITE("enumerate") {

TEST_CASE("N(1)") {
  CountOptions o;
  o.retain_points = true;
  const auto naive = count_naive(1, o);
  CHECK(naive.count == 4);
  REQUIRE(naive.points_complete);
  std::vector<ProjectivePoint> want = {normalize({1, 0, 0, 0, -1, -1}), normalize({1, -1, 0, -1, 0, 0}),
                                       normalize({1, 0, 0, 0, 1, -1}), normalize({1, 1, 0, -1, 0, 0})};
  std::sort(want.begin(), want.end());
  auto got = naive.points;
  std::sort(got.begin(), got.end());
  CHECK(got == want);
  CHECK(count_torsor(1).count == 4);
}

TEST_CASE("independent brute-force values") {
  // Full search of [-B, B]^6 with its own line test.
  const std::pair<i64, u64> frozen[] = {{1, 4}, {2, 10}, {5, 24}, {10, 92}};
  for (auto [B, n] : frozen) {
    CHECK(count_naive(B).count == n);
    CHECK(count_torsor(B).count == n);
  }
}

TEST_CASE("naive equals torsor") {
  for (i64 B : {1, 2, 5, 10, 25, 50, 100, 200}) {
    CAPTURE(B);
    CHECK(count_naive(B).count == count_torsor(B).count);
  }
}

TEST_CASE("bad input") {
  CHECK_THROWS_AS(count_naive(0), std::invalid_argument);
  CHECK_THROWS_AS(count_torsor(0), std::invalid_argument);
  CHECK_THROWS_AS(count_naive(kNaiveFeasibilityBound + 1), std::invalid_argument);
}

TEST_CASE("monotone in B") {
  u64 prev = 0;
  for (i64 B = 1; B <= 300; ++B) {
    const u64 n = count_torsor(B).count;
    CHECK(n >= prev);
    prev = n;
  }
}

TEST_CASE("worker count does not change results") {
  for (i64 B : {1000, 20000}) {
    CountOptions one, four;
    four.workers = 4;
    CHECK(count_torsor(B, one).count == count_torsor(B, four).count);
    CHECK(count_split(B, 1.0, one) == count_split(B, 1.0, four));
  }
  CountOptions three;
  three.workers = 3;
  CHECK(count_naive(150).count == count_naive(150, three).count);
}

TEST_CASE("split is a partition") {
  for (i64 B : {1000, 10000}) {
    const u64 total = count_torsor(B).count;
    for (double A : {0.5, 1.0, 2.0, 28.0}) {
      CAPTURE(B);
      CAPTURE(A);
      CHECK(count_split(B, A).total() == total);
    }
  }
  CHECK(count_split(100, 50).nb1 == 0);
  CHECK_THROWS(count_split(2, 1.0));
}

TEST_CASE("split regression at B = 100, A = 1") {
  const auto s = count_split(100, 1.0);
  CHECK(s.na == 1096);
  CHECK(s.nb1 == 560);
  CHECK(s.nb2 == 566);
}

TEST_CASE("bijection") {
  for (i64 B : {1, 50, 200}) {
    const auto r = verify_bijection(B);
    CAPTURE(r.message);
    CHECK(r.ok);
  }
}

TEST_CASE("height bounds") {
  for (i64 B : {100, 1000}) {
    const auto r = check_height_bounds(B);
    // found without using the bounds, so every point is seen
    CHECK(r.solutions == count_torsor(B).count);
    CHECK(r.violations == 0);
  }
}

TEST_CASE("report serialisation") {
  CountReport r;
  r.B = 100;
  r.method = "torsor";
  r.count = 2222;
  CHECK(csv_header() == "B,method,count,na,nb1,nb2,main_term,ratio,seconds");
  CHECK(to_csv_row(r) == "100,torsor,2222,,,,,,");
  r.split = SplitCounts{1, 2, 3};
  r.main_term = 2000;
  CHECK(to_csv_row(r) == "100,torsor,2222,1,2,3,2000,1.111,");
  CHECK(to_json(r) ==
        R"({"B":100,"method":"torsor","count":2222,"na":1,"nb1":2,"nb2":3,"main_term":2000.0,"ratio":1.111,"seconds":null})");
}

}
