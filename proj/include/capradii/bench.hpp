#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "capradii/generators.hpp"
#include "capradii/oracle.hpp"
#include "capradii/solver_common.hpp"

namespace capradii {

// Dispatch by the CLI algorithm name: nonuniform, uniform,
// bicriteria-general, euclid2, euclid-ptas, bicriteria-euclid.
SolveResult dispatch_solve(const Instance& inst, const std::string& algo,
                           const SolveOptions& opts);
// Capacity scale a verified solution of this algorithm is entitled to.
double algo_capacity_scale(const std::string& algo, double eps);
bool known_algo(const std::string& algo);

struct AlgoSettings {
    std::string algo = "uniform";
    double eps = 0.5;
    bool exhaustive = false;
    uint64_t trials = 64;
};

struct BenchRun {
    GeneratorSpec generator;
    std::vector<AlgoSettings> algorithms;
    std::vector<uint64_t> seeds{0};
    bool oracle = true;
};

struct BenchConfig {
    std::vector<BenchRun> runs;
    OracleBudget budget;
};

BenchConfig bench_config_from_json(const nlohmann::json& j);

// Cross product of generators x algorithms x seeds. One CSV row per solve;
// rows are buffered and emitted in deterministic input order, so the file is
// bit-stable under fixed seeds apart from the wall-time column. The oracle
// column stays empty outside the oracle budget.
void run_bench(const BenchConfig& config, std::ostream& out, int threads = 1);

}  // namespace capradii
