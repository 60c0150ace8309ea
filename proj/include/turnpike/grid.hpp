#pragma once

#include <cmath>

#include "turnpike/errors.hpp"

namespace turnpike {

/// Uniform cell grid covering the design rectangle. Cell (i,j) occupies
/// [origin_x + i*h, origin_x + (i+1)*h) x [origin_y + j*h, origin_y + (j+1)*h);
/// masks and fields attach one value per cell, row-major with index j*nx + i.
struct GridSpec {
  int nx = 0;
  int ny = 0;
  double h = 0.0;
  double origin_x = 0.0;
  double origin_y = 0.0;

  GridSpec() = default;

  GridSpec(int nx_, int ny_, double h_, double ox = 0.0, double oy = 0.0)
      : nx(nx_), ny(ny_), h(h_), origin_x(ox), origin_y(oy) {
    if (nx < 4 || ny < 4) throw Error("GridSpec: nx and ny must be at least 4");
    if (!(h > 0.0) || !std::isfinite(h)) throw Error("GridSpec: h must be positive and finite");
    if (!std::isfinite(origin_x) || !std::isfinite(origin_y))
      throw Error("GridSpec: origin must be finite");
  }

  int cells() const { return nx * ny; }
  int index(int i, int j) const { return j * nx + i; }
  int cell_i(int cell) const { return cell % nx; }
  int cell_j(int cell) const { return cell / nx; }
  bool in_range(int i, int j) const { return i >= 0 && i < nx && j >= 0 && j < ny; }
  bool on_frame(int i, int j) const { return i == 0 || j == 0 || i == nx - 1 || j == ny - 1; }
  double center_x(int i) const { return origin_x + (i + 0.5) * h; }
  double center_y(int j) const { return origin_y + (j + 0.5) * h; }
  double area() const { return static_cast<double>(nx) * ny * h * h; }

  bool operator==(const GridSpec&) const = default;
};

}  // namespace turnpike
