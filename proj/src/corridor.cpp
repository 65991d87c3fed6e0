#include "corridor.hpp"

#include <algorithm>

namespace rsidx {

double SplineCorridor::slope_to(uint64_t key, double target_position) const {
  const double dx = static_cast<double>(key - base_.key);
  return (target_position - static_cast<double>(base_.position)) / dx;
}

std::optional<SplineKnot> SplineCorridor::add(CdfPoint point) {
  if (phase_ == Phase::kFinished) {
    raise(StatusCode::kInvalidArgument, "corridor already finished");
  }
  if (phase_ == Phase::kEmpty) {
    base_ = SplineKnot{point.key, point.position};
    prev_ = point;
    phase_ = Phase::kBaseOnly;
    return base_;
  }
  if (point.key <= prev_.key || point.position <= prev_.position) {
    raise(StatusCode::kOrderViolation,
          "corridor input must be strictly increasing in key and position");
  }

  const double position = static_cast<double>(point.position);
  const double error = static_cast<double>(max_error_);

  if (phase_ == Phase::kBaseOnly) {
    upper_slope_ = slope_to(point.key, position + error);
    lower_slope_ = slope_to(point.key, position - error);
    prev_ = point;
    phase_ = Phase::kTracking;
    return std::nullopt;
  }

  const double slope = slope_to(point.key, position);
  if (lower_slope_ <= slope && slope <= upper_slope_) {
    upper_slope_ = std::min(upper_slope_, slope_to(point.key, position + error));
    lower_slope_ = std::max(lower_slope_, slope_to(point.key, position - error));
    prev_ = point;
    return std::nullopt;
  }

  // Corridor exhausted: the previous point becomes a knot and the corridor
  // restarts from it through this point's displaced targets.
  const SplineKnot committed{prev_.key, prev_.position};
  base_ = committed;
  upper_slope_ = slope_to(point.key, position + error);
  lower_slope_ = slope_to(point.key, position - error);
  prev_ = point;
  return committed;
}

std::optional<SplineKnot> SplineCorridor::finish() {
  if (phase_ == Phase::kEmpty) {
    raise(StatusCode::kEmptyInput, "corridor finished without input");
  }
  if (phase_ == Phase::kFinished) {
    raise(StatusCode::kInvalidArgument, "corridor already finished");
  }
  const bool pending = prev_.key != base_.key;
  phase_ = Phase::kFinished;
  if (!pending) {
    return std::nullopt;
  }
  return SplineKnot{prev_.key, prev_.position};
}

}  // namespace rsidx
