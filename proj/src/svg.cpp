#include "turnpike/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "turnpike/errors.hpp"

namespace turnpike {

namespace {

constexpr double kWidth = 640, kHeight = 480;
constexpr double kLeft = 70, kRight = 30, kTop = 50, kBottom = 60;

struct LogRange {
  double lo = 0.0, hi = 1.0;
  double map(double v, double a, double b) const {
    return a + (v - lo) / (hi - lo) * (b - a);
  }
};

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

void write_loglog_svg(const std::filesystem::path& path, const std::string& title,
                      const std::string& xlabel, const std::string& ylabel,
                      const std::vector<SvgSeries>& series, const std::optional<SvgLine>& fit) {
  double min_pos_x = std::numeric_limits<double>::infinity();
  double min_pos_y = std::numeric_limits<double>::infinity();
  double max_x = 0.0, max_y = 0.0;
  bool clamped = false;
  for (const auto& s : series)
    for (const auto& [x, y] : s.points) {
      if (x > 0.0) min_pos_x = std::min(min_pos_x, x);
      if (y > 0.0) min_pos_y = std::min(min_pos_y, y);
      max_x = std::max(max_x, x);
      max_y = std::max(max_y, y);
    }
  if (!std::isfinite(min_pos_x) || max_x <= 0.0)
    throw Error("write_loglog_svg: no positive x data");
  if (!std::isfinite(min_pos_y)) {
    min_pos_y = 1.0;
    max_y = 1.0;
  }
  const double y_floor = min_pos_y * 1e-3;

  LogRange xr{std::floor(std::log10(min_pos_x)), std::ceil(std::log10(max_x) + 1e-12)};
  LogRange yr{std::floor(std::log10(y_floor)), std::ceil(std::log10(std::max(max_y, min_pos_y)) + 1e-12)};
  if (xr.hi - xr.lo < 1.0) xr.hi = xr.lo + 1.0;
  if (yr.hi - yr.lo < 1.0) yr.hi = yr.lo + 1.0;

  auto X = [&](double v) { return xr.map(std::log10(v), kLeft, kWidth - kRight); };
  auto Y = [&](double v) { return yr.map(std::log10(v), kHeight - kBottom, kTop); };

  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open svg for writing: " + path.string());

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
      << title << "</text>\n";

  // axes + decade grid
  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kWidth - kLeft - kRight
      << "\" height=\"" << kHeight - kTop - kBottom
      << "\" fill=\"none\" stroke=\"#333\" stroke-width=\"1\"/>\n";
  for (int d = static_cast<int>(xr.lo); d <= static_cast<int>(xr.hi); ++d) {
    const double px = xr.map(d, kLeft, kWidth - kRight);
    out << "<line x1=\"" << px << "\" y1=\"" << kTop << "\" x2=\"" << px << "\" y2=\""
        << kHeight - kBottom << "\" stroke=\"#ddd\"/>\n"
        << "<text x=\"" << px << "\" y=\"" << kHeight - kBottom + 18
        << "\" text-anchor=\"middle\" font-size=\"11\">1e" << d << "</text>\n";
  }
  for (int d = static_cast<int>(yr.lo); d <= static_cast<int>(yr.hi); ++d) {
    const double py = yr.map(d, kHeight - kBottom, kTop);
    out << "<line x1=\"" << kLeft << "\" y1=\"" << py << "\" x2=\"" << kWidth - kRight
        << "\" y2=\"" << py << "\" stroke=\"#ddd\"/>\n"
        << "<text x=\"" << kLeft - 6 << "\" y=\"" << py + 4
        << "\" text-anchor=\"end\" font-size=\"11\">1e" << d << "</text>\n";
  }
  out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 16
      << "\" text-anchor=\"middle\" font-size=\"13\">" << xlabel << "</text>\n"
      << "<text x=\"18\" y=\"" << kHeight / 2
      << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 " << kHeight / 2
      << ")\">" << ylabel << "</text>\n";

  if (fit) {
    const double x0 = std::pow(10.0, xr.lo), x1 = std::pow(10.0, xr.hi);
    const double c = std::exp(fit->intercept);
    const double g0 = std::max(c * std::pow(x0, fit->slope), y_floor * 1e-3);
    const double g1 = std::max(c * std::pow(x1, fit->slope), y_floor * 1e-3);
    out << "<line x1=\"" << X(x0) << "\" y1=\"" << Y(std::max(g0, std::pow(10.0, yr.lo)))
        << "\" x2=\"" << X(x1) << "\" y2=\"" << Y(std::max(g1, std::pow(10.0, yr.lo)))
        << "\" stroke=\"#c24a4a\" stroke-dasharray=\"6 4\" stroke-width=\"1.5\"/>\n";
  }

  int legend_row = 0;
  for (const auto& s : series) {
    if (s.connect && s.points.size() > 1) {
      out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
      for (const auto& [x, y] : s.points) {
        if (x <= 0.0) continue;
        const double yy = y > 0.0 ? y : (clamped = true, y_floor);
        out << X(x) << "," << Y(yy) << " ";
      }
      out << "\"/>\n";
    }
    for (const auto& [x, y] : s.points) {
      if (x <= 0.0) continue;
      const double yy = y > 0.0 ? y : (clamped = true, y_floor);
      out << "<circle cx=\"" << X(x) << "\" cy=\"" << Y(yy) << "\" r=\"3.5\" fill=\"" << s.color
          << "\"><title>(" << fmt(x) << ", " << fmt(y) << ")</title></circle>\n";
    }
    out << "<text x=\"" << kWidth - kRight - 8 << "\" y=\"" << kTop + 18 + 16 * legend_row
        << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << s.color << "\">" << s.label
        << "</text>\n";
    ++legend_row;
  }
  if (fit) {
    char lbl[96];
    std::snprintf(lbl, sizeof(lbl), "fit: slope %.3f%s", fit->slope,
                  fit->label.empty() ? "" : (", " + fit->label).c_str());
    out << "<text x=\"" << kWidth - kRight - 8 << "\" y=\"" << kTop + 18 + 16 * legend_row
        << "\" text-anchor=\"end\" font-size=\"12\" fill=\"#c24a4a\">" << lbl << "</text>\n";
    ++legend_row;
  }
  if (clamped)
    out << "<text x=\"" << kLeft + 8 << "\" y=\"" << kTop + 16
        << "\" font-size=\"11\" fill=\"#888\">zero values clamped to plot floor</text>\n";

  out << "</svg>\n";
}

}  // namespace turnpike
