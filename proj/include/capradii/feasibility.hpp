#pragma once

#include <optional>
#include <vector>

#include "capradii/core.hpp"

namespace capradii {

// Decides whether a set of balls admits a capacity-respecting assignment of
// all points and produces one. Modeled as max flow on the bipartite network
//   source -> ball (arc capacity = center's capacity)
//        ball -> point (unit arc iff dist(point, center) <= radius + slack)
//       point -> sink (unit arc).
// The answer is an assignment iff max flow == n. Arc order is fixed by
// (ball index, point index) so runs are reproducible. Each query is
// independent and may run in parallel with others.
//
// Preconditions: non-empty ball list; in a general metric the centers must be
// distinct points. Returns std::nullopt when no assignment exists (an
// infeasible candidate, not a failure).
std::optional<std::vector<int>> find_assignment(const Instance& inst,
                                                const std::vector<Ball>& balls);

// Bi-criteria relaxation: per-ball capacity floor(scale * U). Requires
// uniform capacities and scale >= 1. scale == 1 reduces to find_assignment.
std::optional<std::vector<int>> find_assignment_with_capacity_scale(
    const Instance& inst, const std::vector<Ball>& balls, double scale);

// As find_assignment but with explicit per-ball capacities (used by the
// exact oracle's partition reasoning and by tests).
std::optional<std::vector<int>> find_assignment_with_capacities(
    const Instance& inst, const std::vector<Ball>& balls,
    const std::vector<long long>& ball_caps);

}  // namespace capradii
