#pragma once

#include <map>
#include <optional>
#include <vector>

#include "capradii/guessing.hpp"
#include "capradii/meb.hpp"
#include "capradii/solver_common.hpp"

namespace capradii {

// Sampled witness set for one optimal ball: its exact MEB, slightly
// extended, stands in for the ball. Growth is capped at ceil(32/eps^2) + 1
// members; the sampling loop must terminate within that many steps.
struct CoreSet {
    std::vector<PointId> members;
    Ball meb;  // MEB of the members (coordinate center)

    Ball extended(double epsilon, double r_i) const {
        return ext(meb, epsilon * r_i);
    }
};

struct CoresetGrowthOptions {
    // Sampling pool (empty = all points). Planted-replay tests restrict it
    // to a known cluster to force every sample correct.
    std::vector<PointId> pool;
    // Stop once at most this many pool points lie outside the extended MEB.
    double residual_threshold = 0.0;
    // Trial mode guesses stop/continue each round; forced mode runs to the
    // threshold deterministically.
    bool stop_guess = true;
};

// One trial of the sampling loop: draw a start point, then repeatedly draw
// from outside ext(MEB(S), eps * r_i) while more than the residual threshold
// remains outside (and, in trial mode, the continue guess says so).
// Decisions: [start index into pool] then per round [stop/continue] [index
// into the outside list].
CoreSet grow_coreset_trial(const Instance& inst, int i,
                           const RadiusProfile& profile, double epsilon,
                           Chooser& chooser, const CoresetGrowthOptions& opts);

// Convenience wrapper with the default trial options (pool = P, threshold
// U/2k).
CoreSet grow_coreset_trial(const Instance& inst, int i,
                           const RadiusProfile& profile, double epsilon,
                           std::mt19937_64& rng);

// (2+eps)-approximation for uniform Euclidean instances: profiles, heavy
// guesses, coreset trials with greedy completion, component guesses on the
// surrogate intersection graph, per-component covering balls, feasibility
// via flow. Accepted cost <= (2 + 2 eps_cover) * sum of profile radii.
SolveResult solve_euclid_2approx(const Instance& inst, const SolveOptions& opts);

// Deterministic (1+eps)-approximation: greedy 2 r_1 cover, component
// covering balls, axis-aligned grid of spacing 2 eps_g r_1 / (k sqrt(d))
// over each ext(R_j, r_1), enumeration of center-to-cell assignments with
// radii r_i + eps_g r_1 / k. Needs small dimension (opts-independent cap
// d <= 3) and at most 64 points.
SolveResult solve_euclid_ptas(const Instance& inst, const SolveOptions& opts);

// Euclidean bi-criteria: candidate set = all extended coreset MEBs,
// feasibility at capacity scale 1+eps, accepted cost <= (1+eps) * sum of
// profile radii.
SolveResult solve_euclid_bicriteria(const Instance& inst, const SolveOptions& opts);

// Exposed for tests: the grid the PTAS lays over one component covering
// ball (cell centers).
PointList ptas_grid_cells(const Ball& covering_ball, double r1, int k, int d,
                          double eps_grid);

}  // namespace capradii
