#include "turnpike/ratefit.hpp"

#include <cmath>
#include <vector>

#include <nlohmann/json.hpp>

namespace turnpike {

RateFit fit_rate(std::span<const std::pair<double, double>> points) {
  std::vector<double> lx, ly;
  int excluded = 0;
  for (const auto& [t, gap] : points) {
    if (!(t > 0.0)) throw Error("fit_rate: horizons must be positive");
    if (gap > 0.0) {
      lx.push_back(std::log(t));
      ly.push_back(std::log(gap));
    } else {
      ++excluded;
    }
  }
  const std::size_t n = lx.size();
  if (n < 4)
    throw InsufficientPointsError("fit_rate: need at least 4 positive-gap points, have " +
                                  std::to_string(n));

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw Error("fit_rate: degenerate abscissae (all horizons equal)");

  RateFit fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  fit.constant = std::exp(fit.intercept);
  fit.points_used = static_cast<int>(n);
  fit.excluded_nonpositive = excluded;
  return fit;
}

nlohmann::json rate_fit_to_json(const RateFit& fit) {
  return nlohmann::json{{"slope", fit.slope},
                        {"intercept", fit.intercept},
                        {"residual", fit.residual},
                        {"constant", fit.constant},
                        {"points_used", fit.points_used},
                        {"excluded_nonpositive", fit.excluded_nonpositive}};
}

}  // namespace turnpike
