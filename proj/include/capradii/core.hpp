#pragma once

#include <optional>
#include <string>
#include <vector>

#include "capradii/metric.hpp"

namespace capradii {

// Ball count is always <= k; a ball index into Solution::balls identifies a
// cluster. Ball identity is positional, not structural: two balls with the
// same radius at different centers are distinct clusters.
struct Solution {
    std::vector<Ball> balls;
    std::vector<int> assignment;  // point id -> ball index
    double cost = 0.0;
};

struct VerificationReport {
    enum class Kind {
        uncovered_point,
        capacity_overflow,
        duplicate_center,
        too_many_balls,
        cost_mismatch,
        negative_radius,
        bad_assignment,
        bad_center,
    };
    struct Violation {
        Kind kind;
        std::string detail;
    };
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    bool has(Kind k) const;
    std::string to_string() const;
};

// Same center, radius enlarged by delta. Rejects negative delta.
Ball ext(const Ball& ball, double delta);

// Sum of the radii of the solution's balls.
double solution_cost(const Solution& sol);

// Checks all solution conditions: every point assigned to a ball that
// contains it (slack kContainmentSlack), per-ball load within the center's
// capacity (scaled by capacity_scale for bi-criteria checks, floor(scale*U)),
// distinct centers in general metric, ball count <= k, and recomputable cost
// (relative tolerance kCostRelTol). Invalid solutions produce reports, never
// failures.
VerificationReport verify_solution(const Instance& inst, const Solution& sol,
                                   double capacity_scale = 1.0);

// Drops balls with no assigned points and reindexes the assignment.
Solution drop_empty_balls(const Instance& inst, Solution sol);

}  // namespace capradii
