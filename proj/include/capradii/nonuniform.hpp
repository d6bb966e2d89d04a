#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "capradii/guessing.hpp"
#include "capradii/solver_common.hpp"

namespace capradii {

// Search state of the non-uniform algorithm. I1 holds indices with an
// approximate ball in B1 (radius <= 5 r_i), I2 indices with a replacement
// ball in B2 (radius exactly r_i, pairwise disjoint). Every center is used
// at most once across B1 and B2.
struct Configuration {
    std::set<int> I1, I2;
    std::map<int, Ball> B1, B2;
    std::set<PointId> used_centers;

    bool available(PointId p) const { return !used_centers.count(p); }
    // Uncovered by the union of B1 balls; -1 when covered.
    PointId first_uncovered(const Instance& inst) const;
    // Clears I2/B2 and releases their centers (phase-3 restart).
    void clear_replacements();
};

// Invariant check used in validating runs; returns human-readable violations.
std::vector<std::string> configuration_violations(const Instance& inst,
                                                  const RadiusProfile& profile,
                                                  const Configuration& cfg);

// One trial of the greedy cover step. Decisions, in order:
//   [index i among sorted [k] \ I1] [case: 0 = chosen center is free,
//   1 = it is an unchosen optimal center] [case 1 only: index j among
//   sorted [k] \ (I1+I2)].
// Picks the first uncovered point x, takes the available max-capacity center
// within r_i of x and adds either B(c, 3 r_i) under index i or B(c, r_j)
// under index j. Fails (nullopt) when no center is in range.
std::optional<Configuration> phase1_cover_step(const Instance& inst,
                                               const RadiusProfile& profile,
                                               const Configuration& cfg,
                                               Chooser& chooser);

// One trial of the merge step for a small covered ball touching a big
// optimal ball (r_j >= 5 r_i presumed by the guess). Decisions:
//   [i among sorted I1] [j among sorted [k] \ I1] [case: 0 = max-capacity
//   center inside B(x_i, 5 r_i + r_j) is an unchosen optimal center ->
//   [index j' among sorted [k] \ I1], 1 = plain] ...
// Case 1 adds the ball of radius 2 (5 r_i + r_j) + r_j under index j.
std::optional<Configuration> phase2_merge_step(const Instance& inst,
                                               const RadiusProfile& profile,
                                               const Configuration& cfg,
                                               Chooser& chooser);

struct Phase3Step {
    Configuration cfg;
    // True when an approximate ball was added to B1: replacements were
    // discarded and the search re-enters the merge phase.
    bool restarted = false;
};

// One trial of the replacement step. Decisions:
//   [i among sorted [k] \ (I1+I2)] [T_i among non-empty subsets of I1,
//   bitmask order] [case among {approx-at-x_s, approx-via-intersecting,
//   replacement}] then per-case index guesses as documented in the
//   implementation. Builds P_i from the 10 r_j extensions, grows the
//   far-point sequence (pairwise distance >= 4 r_i, capped at k+1 points,
//   each maximizing min(eta_x, |B(x, r_i) cap P_i|), balls disjoint from
//   B2), and either restarts with a new B1 ball or adds B(x_s, r_i) to B2.
std::optional<Phase3Step> phase3_replace_step(const Instance& inst,
                                              const RadiusProfile& profile,
                                              const Configuration& cfg,
                                              Chooser& chooser);

// Final assembly for a complete configuration (I1 + I2 = [k]): the ball set
// {ext(B1[i], 10 r_i)} + B2, feasibility via the flow engine. Returns a
// verified solution of cost at most sum_{I1} 15 r_i + sum_{I2} r_i, or
// nullopt when the candidate admits no assignment.
std::optional<Solution> assemble_and_check(const Instance& inst,
                                           const RadiusProfile& profile,
                                           const Configuration& cfg);

// The full search: radius profiles (granularity epsilon/15 so that the
// assembled bound lands at (15+epsilon) of the optimum) crossed with either
// exhaustive decision sweeps or random traces. Keeps the cheapest feasible
// assembled solution.
SolveResult solve_nonuniform(const Instance& inst, const SolveOptions& opts);

}  // namespace capradii
