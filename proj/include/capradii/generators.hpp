#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "capradii/core.hpp"

namespace capradii {

// Instance generators for tests and the bench harness. Planted kinds also
// emit the ground-truth clustering and an upper bound on the optimum.
struct GeneratorSpec {
    enum class Kind {
        planted_euclidean,
        planted_general,
        uniform_random,
        adversarial_clique_gadget,
    };
    Kind kind = Kind::planted_euclidean;
    int n = 8;
    int k = 2;
    int d = 2;
    // Uniform capacity; 0 derives the smallest feasible even-split value.
    int U = 0;
    // Non-uniform capacities (planted_general / uniform_random with
    // uniform=false) are drawn from [capacity_min, capacity_max]; 0 means n.
    int capacity_min = 1;
    int capacity_max = 0;
    // Planted clusters keep pairwise center distance at least
    // separation * max planted radius.
    double separation = 4.0;
    uint64_t seed = 0;
    // uniform_random: "euclidean" or "general".
    std::string metric = "euclidean";
    bool uniform = true;
    // clique gadget: underlying graph size, edge probability, clique size.
    int gadget_vertices = 6;
    double gadget_edge_prob = 0.5;
    int gadget_clique = 3;

    std::string id() const;
};

struct GroundTruth {
    std::vector<Ball> balls;
    std::vector<int> assignment;
    std::vector<std::vector<int>> clusters;
    double opt_upper_bound = 0.0;
};

struct Generated {
    Instance instance;
    std::optional<GroundTruth> truth;
};

Generated generate(const GeneratorSpec& spec);

GeneratorSpec generator_spec_from_json(const nlohmann::json& j);
nlohmann::json ground_truth_to_json(const GroundTruth& truth);

}  // namespace capradii
