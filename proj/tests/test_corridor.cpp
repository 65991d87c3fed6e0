#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "corridor.hpp"
#include "oracles.hpp"

using rsidx::CdfPoint;
using rsidx::Error;
using rsidx::SplineCorridor;
using rsidx::SplineKnot;
using rsidx::StatusCode;

namespace {

std::vector<CdfPoint> collinear_points(uint64_t count) {
  std::vector<CdfPoint> points;
  for (uint64_t i = 0; i < count; ++i) {
    points.push_back(CdfPoint{i, i});
  }
  return points;
}

// Random strictly increasing point streams with mixed gap scales.
std::vector<CdfPoint> random_points(uint64_t count, std::mt19937_64& rng) {
  std::vector<CdfPoint> points;
  uint64_t key = rng() % 100;
  uint64_t position = 0;
  for (uint64_t i = 0; i < count; ++i) {
    points.push_back(CdfPoint{key, position});
    const int scale = static_cast<int>(rng() % 3);
    const uint64_t gap = scale == 0   ? 1 + rng() % 4
                         : scale == 1 ? 1 + rng() % (1 << 10)
                                      : 1 + rng() % (uint64_t{1} << 40);
    key += gap;
    position += 1 + rng() % 64;
  }
  return points;
}

}  // namespace

TEST_CASE("construction fixes the error bound") {
  CHECK(SplineCorridor(32).max_error() == 32);
  CHECK(SplineCorridor(0).max_error() == 0);
  CHECK(SplineCorridor(2).max_error() == 2);
  CHECK(SplineCorridor(7).empty());
}

TEST_CASE("first point becomes a knot immediately") {
  SplineCorridor corridor(4);
  const auto knot = corridor.add(CdfPoint{17, 0});
  REQUIRE(knot.has_value());
  CHECK(*knot == SplineKnot{17, 0});
  CHECK_FALSE(corridor.empty());
}

TEST_CASE("zero error commits the previous point on any bend") {
  SplineCorridor corridor(0);
  CHECK(corridor.add(CdfPoint{0, 0}) == SplineKnot{0, 0});
  CHECK_FALSE(corridor.add(CdfPoint{1, 1}).has_value());
  // Slope to (2,5) is 2.5, outside the degenerate corridor [1, 1].
  CHECK(corridor.add(CdfPoint{2, 5}) == SplineKnot{1, 1});
  CHECK(corridor.finish() == SplineKnot{2, 5});
}

TEST_CASE("collinear interior points are absorbed") {
  SplineCorridor corridor(1);
  std::vector<SplineKnot> knots;
  for (const CdfPoint& point : collinear_points(10)) {
    if (auto knot = corridor.add(point)) {
      knots.push_back(*knot);
    }
  }
  if (auto knot = corridor.finish()) {
    knots.push_back(*knot);
  }
  REQUIRE(knots.size() == 2);
  CHECK(knots.front() == SplineKnot{0, 0});
  CHECK(knots.back() == SplineKnot{9, 9});
}

TEST_CASE("piecewise-linear input at zero error keeps only the bends") {
  const std::vector<CdfPoint> points{
      {0, 0}, {1, 1}, {2, 2}, {3, 7}, {4, 12}};
  const auto knots = oracle::corridor_knots(points, 0);
  const std::vector<SplineKnot> expected{{0, 0}, {2, 2}, {4, 12}};
  CHECK(knots == expected);
  CHECK(oracle::max_interpolation_error(knots, points) == 0.0);
}

TEST_CASE("single point yields a single knot") {
  SplineCorridor corridor(3);
  CHECK(corridor.add(CdfPoint{5, 0}) == SplineKnot{5, 0});
  CHECK_FALSE(corridor.finish().has_value());
}

TEST_CASE("finish commits the trailing point once") {
  SplineCorridor corridor(8);
  corridor.add(CdfPoint{1, 0});
  corridor.add(CdfPoint{100, 1});
  CHECK(corridor.finish() == SplineKnot{100, 1});
  CHECK_THROWS_WITH_AS(corridor.finish(), "corridor already finished", Error);
  CHECK_THROWS_AS(corridor.add(CdfPoint{200, 2}), Error);
}

TEST_CASE("finish on an empty corridor is an error") {
  SplineCorridor corridor(8);
  try {
    corridor.finish();
    FAIL("expected an error");
  } catch (const Error& error) {
    CHECK(error.code() == StatusCode::kEmptyInput);
  }
}

TEST_CASE("non-monotone input is rejected") {
  const auto expect_order_violation = [](SplineCorridor& corridor,
                                         CdfPoint point) {
    try {
      corridor.add(point);
      FAIL("expected an error");
    } catch (const Error& error) {
      CHECK(error.code() == StatusCode::kOrderViolation);
    }
  };

  SplineCorridor decreasing_key(2);
  decreasing_key.add(CdfPoint{5, 0});
  expect_order_violation(decreasing_key, CdfPoint{3, 1});

  SplineCorridor equal_key(2);
  equal_key.add(CdfPoint{5, 0});
  expect_order_violation(equal_key, CdfPoint{5, 1});

  SplineCorridor equal_position(2);
  equal_position.add(CdfPoint{5, 3});
  expect_order_violation(equal_position, CdfPoint{6, 3});
}

TEST_CASE("error bound holds over random streams") {
  std::mt19937_64 rng(0xC0441D04);
  for (int trial = 0; trial < 40; ++trial) {
    const uint64_t count = 1 + rng() % 2000;
    const auto points = random_points(count, rng);
    for (uint32_t error : {0u, 1u, 2u, 3u, 8u, 32u, 100u}) {
      const auto knots = oracle::corridor_knots(points, error);
      CAPTURE(trial);
      CAPTURE(error);
      CAPTURE(count);
      CHECK(oracle::max_interpolation_error(knots, points) <=
            static_cast<double>(error) + 1e-6);

      REQUIRE(!knots.empty());
      CHECK(knots.front() == SplineKnot{points.front().key,
                                        points.front().position});
      CHECK(knots.back() ==
            SplineKnot{points.back().key, points.back().position});
      CHECK(knots.size() <= points.size());
      for (size_t i = 1; i < knots.size(); ++i) {
        CHECK(knots[i].key > knots[i - 1].key);
        CHECK(knots[i].position > knots[i - 1].position);
      }
    }
  }
}

TEST_CASE("knot count is nonincreasing in the error bound") {
  std::mt19937_64 rng(0x5EED);
  for (int trial = 0; trial < 20; ++trial) {
    const auto points = random_points(1 + rng() % 1500, rng);
    size_t previous = points.size() + 1;
    for (uint32_t error : {0u, 1u, 2u, 4u, 8u, 16u, 32u, 64u, 256u}) {
      const size_t count = oracle::corridor_knots(points, error).size();
      CAPTURE(trial);
      CAPTURE(error);
      CHECK(count <= previous);
      previous = count;
    }
  }
}

TEST_CASE("identical streams produce identical knots") {
  std::mt19937_64 rng(0xD0D0);
  const auto points = random_points(1200, rng);
  for (uint32_t error : {0u, 5u, 33u}) {
    CHECK(oracle::corridor_knots(points, error) ==
          oracle::corridor_knots(points, error));
  }
}
