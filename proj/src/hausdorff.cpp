#include "turnpike/hausdorff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace turnpike {

namespace {

// sup over x in `from` of the distance to the nearest point of `to`.
double directed_sq(std::span<const Point2> from, std::span<const Point2> to) {
  double worst = 0.0;
  for (const Point2& p : from) {
    double best = std::numeric_limits<double>::infinity();
    for (const Point2& q : to) {
      const double dx = p.x - q.x, dy = p.y - q.y;
      const double d = dx * dx + dy * dy;
      if (d < best) {
        best = d;
        if (best <= worst) break;  // cannot raise the running max
      }
    }
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

double hausdorff_distance(std::span<const Point2> a, std::span<const Point2> b) {
  if (a.empty() || b.empty()) throw Error("hausdorff_distance: empty point set");
  return std::sqrt(std::max(directed_sq(a, b), directed_sq(b, a)));
}

std::vector<Point2> complement_cell_centers(const DomainMask& mask) {
  const GridSpec& g = mask.grid();
  std::vector<Point2> pts;
  pts.reserve(static_cast<std::size_t>(g.cells()) - mask.active_count());
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      if (!mask.active(i, j)) pts.push_back({g.center_x(i), g.center_y(j)});
  return pts;
}

double complementary_hausdorff(const DomainMask& a, const DomainMask& b) {
  if (a.grid() != b.grid()) throw GridMismatchError("complementary_hausdorff: grids differ");
  const auto ca = complement_cell_centers(a);
  const auto cb = complement_cell_centers(b);
  return hausdorff_distance(ca, cb);
}

}  // namespace turnpike
