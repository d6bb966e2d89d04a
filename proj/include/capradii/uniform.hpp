#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "capradii/guessing.hpp"
#include "capradii/solver_common.hpp"

namespace capradii {

// Guessed structure of the optimal solution: which balls are heavy (serve at
// least U/k points) and how [k] splits into connected components of the
// intersection graph of the optimal balls.
struct PartitionGuess {
    std::set<int> heavy;
    std::vector<std::set<int>> components;  // partition of [k]

    bool mixed(const std::set<int>& comp) const;       // heavy and light members
    bool pure_heavy(const std::set<int>& comp) const;  // heavy members only
};

// The candidate lists of the uniform assembly. L1 approximates heavy balls
// (radius 2 r_i around a sampled point), L2 covers mixed components (radius
// 2 rad(C) around the least heavy member's sample), L3 complements the cover
// greedily (radius 2 r_j at an uncovered point, one light index per ball).
struct ListBundle {
    struct Entry {
        Ball ball;
        int index;  // profile index the ball stands in for
    };
    struct ComponentEntry {
        Ball ball;
        int component;  // position in PartitionGuess::components
    };
    std::vector<Entry> L1;
    std::vector<ComponentEntry> L2;
    std::vector<Entry> L3;

    size_t ball_count() const { return L1.size() + L2.size() + L3.size(); }
};

// Uniform point draw; hits any ball serving >= U/k points with probability
// at least 1/k^2 because n <= kU.
PointId sample_heavy_hit(const Instance& inst, std::mt19937_64& rng);

// One trial of the heavy-sampling step. Decisions: one sample position
// choose(n) per heavy index in ascending order. The sample of the least
// heavy index of each mixed component also centers that component's L2 ball
// of radius 2 * rad(C), rad(C) = sum of profile radii over the component.
ListBundle build_L1_L2(const Instance& inst, const RadiusProfile& profile,
                       const PartitionGuess& guess, Chooser& chooser);

// Greedy complement: while some point is uncovered, guess which light index
// (in a component without heavy members, not yet associated) its optimal
// ball carries and add a ball of radius 2 r_j there. Fails when more than k
// balls would be needed or no eligible index remains.
// Decisions: choose(|eligible|) per added ball.
bool build_L3(const Instance& inst, const RadiusProfile& profile,
              const PartitionGuess& guess, ListBundle& bundle, Chooser& chooser);

// Final assembly. For every untouched light index (no associated L3 ball,
// light component) one disposition guess: absorbed by mixed-component
// balls / extend a designated L2 or L3 ball by 2 r_i (the maximal designee
// per ball wins) / fold into the L4 ball of a pure-heavy-component index j,
// which extends j's L1 ball in place to radius 2 (r_j + sum of designees).
// Keeping the L4 extension on the L1 ball itself preserves the one-ball-per-
// center rule that hard capacities impose. Accepted solutions cost at most
// 4 * sum of profile radii.
std::optional<Solution> assemble_uniform(const Instance& inst,
                                         const RadiusProfile& profile,
                                         const PartitionGuess& guess,
                                         const ListBundle& bundle,
                                         Chooser& chooser);

// (4+eps)-approximation for uniform capacities: profiles at granularity
// eps/4 crossed with partition/component guesses and list trials.
SolveResult solve_uniform(const Instance& inst, const SolveOptions& opts);

// General-metric bi-criteria: heavy threshold eps*U/k, covering of the
// residual by radius-2r_j balls, feasibility at capacity scale 1+eps.
// Accepted solutions cost at most 2 * sum of profile radii and every ball
// serves at most floor((1+eps) U) points.
SolveResult solve_bicriteria_general(const Instance& inst, const SolveOptions& opts);

// All set partitions of {0..k-1}, restricted-growth-string order.
std::vector<std::vector<std::set<int>>> set_partitions(int k);

}  // namespace capradii
