#pragma once

#include <span>
#include <vector>

#include "turnpike/mask.hpp"

namespace turnpike {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Hausdorff distance between two nonempty finite point sets (Euclidean
/// norm): max over both directed sup-of-inf distances. Exact brute force.
double hausdorff_distance(std::span<const Point2> a, std::span<const Point2> b);

/// Cell centers of the complement (inactive cells) of a mask.
std::vector<Point2> complement_cell_centers(const DomainMask& mask);

/// Hausdorff distance between the complements of two masks on the same grid,
/// measured between complement cell centers. A metric on masks of one grid.
double complementary_hausdorff(const DomainMask& a, const DomainMask& b);

}  // namespace turnpike
