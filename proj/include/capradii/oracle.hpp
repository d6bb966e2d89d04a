#pragma once

#include <optional>

#include "capradii/core.hpp"

namespace capradii {

// Exhaustive exact solvers for tiny instances; ground truth for the
// approximation-ratio tests. The budget keeps them at desk scale.
struct OracleBudget {
    int max_n = 10;
    int max_k = 3;
    double time_limit_s = 120.0;
};

enum class OracleStatus { optimal, infeasible, budget_exceeded };

struct OracleResult {
    OracleStatus status = OracleStatus::budget_exceeded;
    std::optional<Solution> solution;

    double cost() const { return solution ? solution->cost : -1.0; }
};

// Minimum-cost solution by enumeration over center subsets (distinct input
// points) crossed with per-center candidate radii, feasibility via the flow
// engine, branch-and-bound pruning on partial radius sums. Candidate radii
// for a center are exactly its distances to the input points: an optimal
// ball can always shrink until it touches its farthest assigned point, so
// restricting to these values loses nothing. Ties between equal-cost optima
// break lexicographically on (radius vector sorted descending, center ids).
OracleResult solve_exact_general(const Instance& inst, const OracleBudget& budget = {});

// Minimum-cost solution by enumerating all partitions of the points into at
// most k parts of size at most U (restricted-growth strings, parts above U
// pruned immediately); the cost of a partition is the sum of exact MEB radii.
// Requires a Euclidean instance with d <= 4.
OracleResult solve_exact_euclidean(const Instance& inst, const OracleBudget& budget = {});

struct BoundResult {
    OracleStatus status = OracleStatus::budget_exceeded;
    double value = 0.0;
};

// Exact uncapacitated optimum (same enumeration with capacities raised to
// n). A sanity floor: the capacitated optimum can never beat it.
BoundResult lower_bound_uncapacitated(const Instance& inst, const OracleBudget& budget = {});

}  // namespace capradii
