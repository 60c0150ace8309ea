#pragma once

#include <span>
#include <utility>

#include <nlohmann/json_fwd.hpp>

#include "turnpike/errors.hpp"

namespace turnpike {

/// Least-squares power-law fit: log(gap) = intercept + slope * log(T).
/// `residual` is the root-mean-square residual in log space; `constant` is
/// exp(intercept). Points with nonpositive gaps are excluded and counted.
struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;
  double constant = 0.0;
  int points_used = 0;
  int excluded_nonpositive = 0;
};

/// Fits (T, gap) pairs in log-log coordinates. Throws InsufficientPointsError
/// when fewer than 4 positive-gap points remain.
RateFit fit_rate(std::span<const std::pair<double, double>> points);

nlohmann::json rate_fit_to_json(const RateFit& fit);

}  // namespace turnpike
