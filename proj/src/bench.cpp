#include "capradii/bench.hpp"

#include <atomic>
#include <chrono>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "capradii/euclidean.hpp"
#include "capradii/nonuniform.hpp"
#include "capradii/uniform.hpp"

namespace capradii {

SolveResult dispatch_solve(const Instance& inst, const std::string& algo,
                           const SolveOptions& opts) {
    if (algo == "nonuniform") return solve_nonuniform(inst, opts);
    if (algo == "uniform") return solve_uniform(inst, opts);
    if (algo == "bicriteria-general") return solve_bicriteria_general(inst, opts);
    if (algo == "euclid2") return solve_euclid_2approx(inst, opts);
    if (algo == "euclid-ptas") return solve_euclid_ptas(inst, opts);
    if (algo == "bicriteria-euclid") return solve_euclid_bicriteria(inst, opts);
    throw std::invalid_argument("unknown algorithm: " + algo);
}

double algo_capacity_scale(const std::string& algo, double eps) {
    if (algo == "bicriteria-general" || algo == "bicriteria-euclid")
        return 1.0 + eps;
    return 1.0;
}

bool known_algo(const std::string& algo) {
    static const char* names[] = {"nonuniform",  "uniform",
                                  "bicriteria-general", "euclid2",
                                  "euclid-ptas", "bicriteria-euclid"};
    for (const char* n : names)
        if (algo == n) return true;
    return false;
}

BenchConfig bench_config_from_json(const nlohmann::json& j) {
    BenchConfig config;
    if (j.contains("oracle_budget")) {
        const auto& b = j.at("oracle_budget");
        config.budget.max_n = b.value("max_n", config.budget.max_n);
        config.budget.max_k = b.value("max_k", config.budget.max_k);
        config.budget.time_limit_s =
            b.value("time_limit_s", config.budget.time_limit_s);
    }
    for (const auto& run_json : j.at("runs")) {
        BenchRun run;
        run.generator = generator_spec_from_json(run_json.at("generator"));
        for (const auto& a : run_json.at("algorithms")) {
            AlgoSettings s;
            s.algo = a.at("algo").get<std::string>();
            if (!known_algo(s.algo))
                throw std::invalid_argument("unknown algorithm: " + s.algo);
            s.eps = a.value("eps", s.eps);
            s.exhaustive = a.value("mode", std::string("rand")) == "exh";
            s.trials = a.value("trials", s.trials);
            run.algorithms.push_back(std::move(s));
        }
        if (run_json.contains("seeds"))
            run.seeds = run_json.at("seeds").get<std::vector<uint64_t>>();
        run.oracle = run_json.value("oracle", true);
        config.runs.push_back(std::move(run));
    }
    return config;
}

namespace {

struct Task {
    GeneratorSpec generator;
    AlgoSettings algo;
    uint64_t seed;
    bool oracle;
};

struct RowResult {
    std::string csv;
};

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

RowResult run_task(const Task& task, const OracleBudget& budget) {
    GeneratorSpec spec = task.generator;
    spec.seed = task.seed;
    Generated gen = generate(spec);
    const Instance& inst = gen.instance;

    SolveOptions opts;
    opts.epsilon = task.algo.eps;
    opts.exhaustive = task.algo.exhaustive;
    opts.trials = task.algo.trials;
    opts.seed = task.seed;

    const auto start = std::chrono::steady_clock::now();
    SolveResult result = dispatch_solve(inst, task.algo.algo, opts);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();

    std::string oracle_cost, ratio;
    if (task.oracle) {
        OracleResult oracle = inst.euclidean() ? solve_exact_euclidean(inst, budget)
                                               : solve_exact_general(inst, budget);
        if (oracle.status == OracleStatus::optimal && result.solution) {
            oracle_cost = format_double(oracle.cost());
            if (oracle.cost() > 0.0)
                ratio = format_double(result.solution->cost / oracle.cost());
            else if (result.solution->cost <= kContainmentSlack)
                ratio = format_double(1.0);
        } else if (oracle.status == OracleStatus::optimal) {
            oracle_cost = format_double(oracle.cost());
        }
    }

    std::ostringstream row;
    row << spec.id() << ',' << task.algo.algo << ',' << task.algo.eps << ','
        << task.seed << ',';
    if (result.solution) row << format_double(result.solution->cost);
    row << ',' << oracle_cost << ',' << ratio << ',' << format_double(wall)
        << ',' << result.trials_used;
    return RowResult{row.str()};
}

}  // namespace

void run_bench(const BenchConfig& config, std::ostream& out, int threads) {
    std::vector<Task> tasks;
    for (const auto& run : config.runs)
        for (uint64_t seed : run.seeds)
            for (const auto& algo : run.algorithms)
                tasks.push_back(Task{run.generator, algo, seed, run.oracle});

    std::vector<RowResult> rows(tasks.size());
    if (threads <= 1) {
        for (size_t t = 0; t < tasks.size(); ++t)
            rows[t] = run_task(tasks[t], config.budget);
    } else {
        std::atomic<size_t> next{0};
        auto worker = [&]() {
            while (true) {
                const size_t t = next.fetch_add(1);
                if (t >= tasks.size()) return;
                rows[t] = run_task(tasks[t], config.budget);
            }
        };
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    out << "# capradii.bench.v1\n";
    out << "instance_id,algorithm,epsilon,seed,cost,oracle_cost,ratio,"
           "wall_time_s,trials_used\n";
    for (const auto& row : rows) out << row.csv << "\n";
}

}  // namespace capradii
