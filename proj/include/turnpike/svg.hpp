#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace turnpike {

struct SvgSeries {
  std::vector<std::pair<double, double>> points;
  std::string label;
  std::string color = "#1f6fb2";
  bool connect = true;
};

struct SvgLine {
  double slope = 0.0;      // in log10-log10 coordinates of the data
  double intercept = 0.0;  // natural-log intercept of g = C * T^slope
  std::string label;
};

/// Self-contained log-log scatter/line plot with decade ticks. Nonpositive
/// values are clamped to a floor three decades below the smallest positive
/// value and flagged in the legend.
void write_loglog_svg(const std::filesystem::path& path, const std::string& title,
                      const std::string& xlabel, const std::string& ylabel,
                      const std::vector<SvgSeries>& series,
                      const std::optional<SvgLine>& fit = std::nullopt);

}  // namespace turnpike
