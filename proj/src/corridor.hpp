#pragma once

#include <cstdint>
#include <optional>

#include "error.hpp"

namespace rsidx {

// One distinct key with the position of its first occurrence in the
// underlying sorted array.
struct CdfPoint {
  uint64_t key = 0;
  uint64_t position = 0;

  friend bool operator==(const CdfPoint&, const CdfPoint&) = default;
};

// A committed spline point. The index model is the piecewise-linear
// interpolant through the knot sequence.
struct SplineKnot {
  uint64_t key = 0;
  uint64_t position = 0;

  friend bool operator==(const SplineKnot&, const SplineKnot&) = default;
};

// Streaming greedy corridor fit. Feed strictly increasing CDF points with
// add(); each call commits at most one knot and does a constant amount of
// work. The corridor is the interval of slopes from the last committed knot
// such that every absorbed point stays within max_error positions of the
// line; a point whose slope leaves the corridor forces its predecessor to
// become a knot, and the corridor restarts from there. finish() commits the
// trailing point so the interpolant covers the whole key range.
//
// Guarantee: after finish(), linear interpolation through the committed
// knots is within max_error of every point's position. Slope arithmetic is
// double precision; with keys spanning the full 64-bit range the comparison
// can be off by an ulp, so the guarantee is validated post-hoc in tests
// instead of relying on exact arithmetic.
class SplineCorridor {
 public:
  explicit SplineCorridor(uint32_t max_error) : max_error_(max_error) {}

  // Returns the knot committed by this step, if any. The first point is
  // always committed. A slope exactly on the corridor boundary counts as
  // inside.
  std::optional<SplineKnot> add(CdfPoint point);

  // Commits the last point seen unless it is already the base knot.
  // No further points are accepted afterwards.
  std::optional<SplineKnot> finish();

  uint32_t max_error() const { return max_error_; }
  bool empty() const { return phase_ == Phase::kEmpty; }

 private:
  enum class Phase { kEmpty, kBaseOnly, kTracking, kFinished };

  double slope_to(uint64_t key, double target_position) const;

  uint32_t max_error_;
  Phase phase_ = Phase::kEmpty;
  SplineKnot base_{};
  CdfPoint prev_{};
  double upper_slope_ = 0.0;
  double lower_slope_ = 0.0;
};

}  // namespace rsidx
