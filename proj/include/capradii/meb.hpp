#pragma once

#include <vector>

#include "capradii/core.hpp"

namespace capradii {

using PointList = std::vector<std::vector<double>>;

// Exact minimum enclosing ball via randomized incremental support-set
// construction (d <= 4). Degenerate supports fall back to a brute-force
// search over boundary subsets, so coincident and collinear inputs are fine.
// All input points end up inside the result within kContainmentSlack.
Ball meb_exact_small_d(const PointList& points);

// Iterative farthest-point scheme with center averaging, ceil(1/eps^2)
// passes. The returned radius is the exact maximum distance from the final
// center, so the ball contains every input point and its radius lies in
// [exact, (1+eps)*exact]. Works in any dimension.
Ball meb_approx(const PointList& points, double epsilon);

// Smallest ball containing two given balls (center on the line through the
// two centers).
Ball meb_of_two_balls(const Ball& a, const Ball& b);

// For intersecting balls: the ball of radius r_a + r_b centered between the
// two centers that contains both.
Ball cover_two_balls(const Ball& a, const Ball& b);

double coord_dist(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace capradii
