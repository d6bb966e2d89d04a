#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "capradii/bench.hpp"
#include "capradii/io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 2;
constexpr int kExitBudget = 3;
constexpr int kExitVerification = 4;

int exit_code_for(const capradii::SolveResult& result) {
    switch (result.outcome) {
        case capradii::SolveResult::Outcome::solved: return kExitOk;
        case capradii::SolveResult::Outcome::infeasible: return kExitInfeasible;
        case capradii::SolveResult::Outcome::budget_exhausted: return kExitBudget;
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"capradii: capacitated sum-of-radii clustering toolkit"};
    app.require_subcommand(1);

    // ---- gen ----
    auto* gen = app.add_subcommand("gen", "generate an instance");
    std::string gen_kind = "planted-euclidean", gen_metric = "euclidean";
    std::string gen_out, gen_truth, gen_spec_file;
    capradii::GeneratorSpec spec;
    bool gen_nonuniform = false;
    gen->add_option("--spec", gen_spec_file, "generator spec JSON file");
    gen->add_option("--kind", gen_kind,
                    "planted-euclidean|planted-general|uniform-random|"
                    "adversarial-clique-gadget");
    gen->add_option("--n", spec.n);
    gen->add_option("--k", spec.k);
    gen->add_option("--d", spec.d);
    gen->add_option("--U", spec.U);
    gen->add_option("--seed", spec.seed);
    gen->add_option("--separation", spec.separation);
    gen->add_option("--capacity-min", spec.capacity_min);
    gen->add_option("--capacity-max", spec.capacity_max);
    gen->add_option("--metric", gen_metric, "uniform-random: euclidean|general");
    gen->add_flag("--nonuniform", gen_nonuniform,
                  "draw per-point capacities (general metric)");
    gen->add_option("--gadget-vertices", spec.gadget_vertices);
    gen->add_option("--gadget-edge-prob", spec.gadget_edge_prob);
    gen->add_option("--gadget-clique", spec.gadget_clique);
    gen->add_option("--out", gen_out, "instance output path")->required();
    gen->add_option("--truth", gen_truth, "ground-truth output path");

    // ---- solve ----
    auto* solve = app.add_subcommand("solve", "run an approximation algorithm");
    std::string solve_instance, solve_algo, solve_mode = "rand", solve_out;
    capradii::SolveOptions solve_opts;
    int solve_threads = 1;
    solve->add_option("instance", solve_instance, "instance JSON")->required();
    solve->add_option("--algo", solve_algo,
                      "nonuniform|uniform|bicriteria-general|euclid2|"
                      "euclid-ptas|bicriteria-euclid")
        ->required();
    solve->add_option("--eps", solve_opts.epsilon);
    solve->add_option("--mode", solve_mode, "rand|exh");
    solve->add_option("--trials", solve_opts.trials);
    solve->add_option("--seed", solve_opts.seed);
    solve->add_option("--max-trials", solve_opts.max_trials);
    solve->add_option("--threads", solve_threads,
                      "accepted for symmetry; solves are single-threaded");
    solve->add_option("--out", solve_out, "solution output path");

    // ---- oracle ----
    auto* oracle = app.add_subcommand("oracle", "exact solve at desk scale");
    std::string oracle_instance, oracle_out;
    capradii::OracleBudget budget;
    oracle->add_option("instance", oracle_instance)->required();
    oracle->add_option("--max-n", budget.max_n);
    oracle->add_option("--max-k", budget.max_k);
    oracle->add_option("--time-limit", budget.time_limit_s);
    oracle->add_option("--out", oracle_out, "solution output path");

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "check a solution file");
    std::string verify_instance, verify_solution;
    double verify_scale = 1.0;
    verify->add_option("instance", verify_instance)->required();
    verify->add_option("solution", verify_solution)->required();
    verify->add_option("--capacity-scale", verify_scale);

    // ---- bench ----
    auto* bench = app.add_subcommand("bench", "run a benchmark config");
    std::string bench_config_path, bench_out;
    int bench_threads = 1;
    bench->add_option("--config", bench_config_path)->required();
    bench->add_option("--out", bench_out, "CSV output path");
    bench->add_option("--threads", bench_threads);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            if (!gen_spec_file.empty()) {
                std::ifstream in(gen_spec_file);
                if (!in) throw std::runtime_error("cannot open " + gen_spec_file);
                nlohmann::json j;
                in >> j;
                spec = capradii::generator_spec_from_json(j);
            } else {
                nlohmann::json j{{"kind", gen_kind}};
                spec.metric = gen_metric;
                spec.uniform = !gen_nonuniform;
                spec.kind = capradii::generator_spec_from_json(j).kind;
            }
            auto generated = capradii::generate(spec);
            capradii::save_instance(generated.instance, gen_out);
            if (!gen_truth.empty()) {
                if (!generated.truth)
                    throw std::runtime_error("generator emits no ground truth");
                std::ofstream out(gen_truth);
                out << capradii::ground_truth_to_json(*generated.truth).dump(2)
                    << "\n";
            }
            std::cout << "wrote " << gen_out << " (" << spec.id() << ")\n";
            return kExitOk;
        }

        if (*solve) {
            if (!capradii::known_algo(solve_algo)) {
                std::cerr << "unknown algorithm: " << solve_algo << "\n";
                return 1;
            }
            solve_opts.exhaustive = solve_mode == "exh";
            auto inst = capradii::load_instance(solve_instance);
            auto result = capradii::dispatch_solve(inst, solve_algo, solve_opts);
            if (result.solution) {
                std::cout << "cost " << result.solution->cost << " (trials "
                          << result.trials_used << ")\n";
                if (!solve_out.empty())
                    capradii::save_solution(*result.solution, solve_out);
                else
                    std::cout << capradii::solution_to_json(*result.solution).dump(2)
                              << "\n";
            } else if (result.outcome ==
                       capradii::SolveResult::Outcome::infeasible) {
                std::cout << "infeasible instance\n";
            } else {
                std::cout << "budget exhausted without a feasible candidate\n";
            }
            return exit_code_for(result);
        }

        if (*oracle) {
            auto inst = capradii::load_instance(oracle_instance);
            auto result = inst.euclidean()
                              ? capradii::solve_exact_euclidean(inst, budget)
                              : capradii::solve_exact_general(inst, budget);
            if (result.status == capradii::OracleStatus::infeasible) {
                std::cout << "infeasible instance\n";
                return kExitInfeasible;
            }
            if (result.status == capradii::OracleStatus::budget_exceeded) {
                std::cout << "oracle budget exceeded\n";
                return kExitBudget;
            }
            std::cout << "cost " << result.cost() << "\n";
            std::cout << capradii::solution_to_json(*result.solution).dump(2)
                      << "\n";
            if (!oracle_out.empty())
                capradii::save_solution(*result.solution, oracle_out);
            return kExitOk;
        }

        if (*verify) {
            auto inst = capradii::load_instance(verify_instance);
            auto sol = capradii::load_solution(verify_solution);
            auto report = capradii::verify_solution(inst, sol, verify_scale);
            if (report.ok()) {
                std::cout << "valid\n";
                return kExitOk;
            }
            std::cout << report.to_string();
            return kExitVerification;
        }

        if (*bench) {
            std::ifstream in(bench_config_path);
            if (!in) throw std::runtime_error("cannot open " + bench_config_path);
            nlohmann::json j;
            in >> j;
            auto config = capradii::bench_config_from_json(j);
            if (bench_out.empty()) {
                capradii::run_bench(config, std::cout, bench_threads);
            } else {
                std::ofstream out(bench_out);
                if (!out) throw std::runtime_error("cannot write " + bench_out);
                capradii::run_bench(config, out, bench_threads);
                std::cout << "wrote " << bench_out << "\n";
            }
            return kExitOk;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
