#pragma once

#include <cstdint>
#include <optional>

#include "capradii/chooser.hpp"
#include "capradii/core.hpp"

namespace capradii {

struct SolveOptions {
    double epsilon = 0.5;
    // Exhaustive mode sweeps every decision tree; randomized mode runs
    // `trials` random traces per profile.
    bool exhaustive = false;
    uint64_t trials = 64;
    uint64_t seed = 0;
    // Safety cap on the total number of traces (0 = unlimited).
    uint64_t max_trials = 0;
    // Exhaustive sweeps are only attempted up to this k.
    int exhaustive_k_max = 4;
    // Check configuration/list invariants after every accepted step.
    bool validate = false;
};

struct SolveResult {
    enum class Outcome { solved, infeasible, budget_exhausted };
    Outcome outcome = Outcome::budget_exhausted;
    std::optional<Solution> solution;
    GuessTrace best_trace;
    uint64_t trials_used = 0;

    double cost() const { return solution ? solution->cost : -1.0; }
};

}  // namespace capradii
