#include "capradii/uniform.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "capradii/feasibility.hpp"

namespace capradii {

namespace {

bool covered_by(const Instance& inst, const ListBundle& bundle, PointId p) {
    for (const auto& e : bundle.L1)
        if (inst.metric().contains(e.ball, p)) return true;
    for (const auto& e : bundle.L2)
        if (inst.metric().contains(e.ball, p)) return true;
    for (const auto& e : bundle.L3)
        if (inst.metric().contains(e.ball, p)) return true;
    return false;
}

PointId first_uncovered(const Instance& inst, const ListBundle& bundle) {
    for (PointId p = 0; p < inst.n(); ++p)
        if (!covered_by(inst, bundle, p)) return p;
    return -1;
}

double component_radius(const RadiusProfile& profile, const std::set<int>& comp) {
    double r = 0.0;
    for (int i : comp) r += profile.radii[i];
    return r;
}

}  // namespace

bool PartitionGuess::mixed(const std::set<int>& comp) const {
    bool h = false, l = false;
    for (int i : comp) (heavy.count(i) ? h : l) = true;
    return h && l;
}

bool PartitionGuess::pure_heavy(const std::set<int>& comp) const {
    for (int i : comp)
        if (!heavy.count(i)) return false;
    return !comp.empty();
}

PointId sample_heavy_hit(const Instance& inst, std::mt19937_64& rng) {
    return std::uniform_int_distribution<PointId>(0, inst.n() - 1)(rng);
}

ListBundle build_L1_L2(const Instance& inst, const RadiusProfile& profile,
                       const PartitionGuess& guess, Chooser& chooser) {
    ListBundle bundle;
    std::map<int, PointId> sample_of;
    for (int i : guess.heavy) {
        const PointId x = chooser.choose(static_cast<uint32_t>(inst.n()));
        sample_of[i] = x;
        bundle.L1.push_back({Ball::at_point(x, 2.0 * profile.radii[i]), i});
    }
    for (size_t c = 0; c < guess.components.size(); ++c) {
        const auto& comp = guess.components[c];
        if (!guess.mixed(comp)) continue;
        int least_heavy = -1;
        for (int i : comp)
            if (guess.heavy.count(i)) {
                least_heavy = i;
                break;
            }
        bundle.L2.push_back(
            {Ball::at_point(sample_of.at(least_heavy),
                            2.0 * component_radius(profile, comp)),
             static_cast<int>(c)});
    }
    return bundle;
}

bool build_L3(const Instance& inst, const RadiusProfile& profile,
              const PartitionGuess& guess, ListBundle& bundle, Chooser& chooser) {
    const int k = static_cast<int>(profile.radii.size());
    // Indices whose optimal ball can still be uncovered: light, in a
    // component without heavy members, not yet associated to an L3 ball.
    auto eligible = [&]() {
        std::vector<int> out;
        for (int i = 0; i < k; ++i) {
            if (guess.heavy.count(i)) continue;
            bool in_heavy_comp = false;
            for (const auto& comp : guess.components)
                if (comp.count(i)) {
                    for (int j : comp)
                        if (guess.heavy.count(j)) in_heavy_comp = true;
                    break;
                }
            if (in_heavy_comp) continue;
            bool used = false;
            for (const auto& e : bundle.L3)
                if (e.index == i) used = true;
            if (!used) out.push_back(i);
        }
        return out;
    };

    PointId x;
    while ((x = first_uncovered(inst, bundle)) >= 0) {
        if (bundle.ball_count() >= static_cast<size_t>(k)) return false;
        const auto opts = eligible();
        if (opts.empty()) return false;
        const int j = opts[chooser.choose(static_cast<uint32_t>(opts.size()))];
        bundle.L3.push_back({Ball::at_point(x, 2.0 * profile.radii[j]), j});
    }
    return true;
}

std::optional<Solution> assemble_uniform(const Instance& inst,
                                         const RadiusProfile& profile,
                                         const PartitionGuess& guess,
                                         const ListBundle& bundle,
                                         Chooser& chooser) {
    const int k = static_cast<int>(profile.radii.size());
    if (bundle.ball_count() > static_cast<size_t>(k)) return std::nullopt;

    // Untouched light indices in components without heavy members.
    std::vector<int> untouched;
    for (int i = 0; i < k; ++i) {
        if (guess.heavy.count(i)) continue;
        bool in_heavy_comp = false;
        for (const auto& comp : guess.components)
            if (comp.count(i)) {
                for (int j : comp)
                    if (guess.heavy.count(j)) in_heavy_comp = true;
                break;
            }
        if (in_heavy_comp) continue;
        bool assoc = false;
        for (const auto& e : bundle.L3)
            if (e.index == i) assoc = true;
        if (!assoc) untouched.push_back(i);
    }

    // L4 targets: heavy indices whose component is heavy-only.
    std::vector<int> l4_targets;
    for (int j : guess.heavy)
        for (const auto& comp : guess.components)
            if (comp.count(j) && guess.pure_heavy(comp)) l4_targets.push_back(j);

    // Dispositions. extension_of[b] collects designees of L2/L3 ball b;
    // l4_of[j] collects designees folded into heavy index j's ball.
    const int n_ext = static_cast<int>(bundle.L2.size() + bundle.L3.size());
    std::map<int, std::vector<int>> extension_of;
    std::map<int, std::vector<int>> l4_of;
    for (int i : untouched) {
        const uint32_t options = 1 + n_ext + static_cast<uint32_t>(l4_targets.size());
        const uint32_t pickd = chooser.choose(options);
        if (pickd == 0) continue;  // hidden in mixed-component balls
        if (pickd <= static_cast<uint32_t>(n_ext))
            extension_of[pickd - 1].push_back(i);
        else
            l4_of[l4_targets[pickd - 1 - n_ext]].push_back(i);
    }

    std::vector<Ball> balls;
    double bound = 0.0;
    for (double r : profile.radii) bound += r;
    bound *= 4.0;

    for (const auto& e : bundle.L1) {
        auto it = l4_of.find(e.index);
        if (it == l4_of.end()) {
            balls.push_back(e.ball);
        } else {
            double sum = 0.0;
            for (int i : it->second) sum += profile.radii[i];
            balls.push_back(Ball::at_point(
                e.ball.center_id, 2.0 * (profile.radii[e.index] + sum)));
        }
    }
    int ext_pos = 0;
    auto extended = [&](const Ball& b) {
        double grow = 0.0;
        auto it = extension_of.find(ext_pos);
        if (it != extension_of.end()) {
            for (int i : it->second)
                grow = std::max(grow, 2.0 * profile.radii[i]);
        }
        ++ext_pos;
        return ext(b, grow);
    };
    for (const auto& e : bundle.L2) balls.push_back(extended(e.ball));
    for (const auto& e : bundle.L3) balls.push_back(extended(e.ball));

    // Hard capacities forbid reusing a center; wrong guesses can collide.
    std::set<PointId> centers;
    for (const auto& b : balls)
        if (!centers.insert(b.center_id).second) return std::nullopt;

    double cost = 0.0;
    for (const auto& b : balls) cost += b.radius;
    if (cost > bound + kContainmentSlack) return std::nullopt;

    auto assignment = find_assignment(inst, balls);
    if (!assignment) return std::nullopt;
    Solution sol;
    sol.balls = std::move(balls);
    sol.assignment = std::move(*assignment);
    sol.cost = solution_cost(sol);
    if (!verify_solution(inst, sol).ok()) return std::nullopt;
    return drop_empty_balls(inst, sol);
}

std::vector<std::vector<std::set<int>>> set_partitions(int k) {
    std::vector<std::vector<std::set<int>>> out;
    if (k == 0) {
        out.emplace_back();
        return out;
    }
    std::vector<int> rgs(k, 0);
    auto emit = [&]() {
        int parts = *std::max_element(rgs.begin(), rgs.end()) + 1;
        std::vector<std::set<int>> p(parts);
        for (int i = 0; i < k; ++i) p[rgs[i]].insert(i);
        out.push_back(std::move(p));
    };
    // Restricted growth strings in lexicographic order.
    std::function<void(int, int)> rec = [&](int i, int maxv) {
        if (i == k) {
            emit();
            return;
        }
        for (int v = 0; v <= maxv + 1; ++v) {
            rgs[i] = v;
            rec(i + 1, std::max(maxv, v));
        }
    };
    rec(0, -1);
    return out;
}

namespace {

struct UniformTrialContext {
    const Instance& inst;
    const RadiusProfile& profile;
    const std::vector<std::vector<std::set<int>>>& partitions;
    double incumbent;
};

std::optional<Solution> run_uniform_trial(const UniformTrialContext& ctx,
                                          Chooser& chooser) {
    const int k = static_cast<int>(ctx.profile.radii.size());
    PartitionGuess guess;
    const uint32_t heavy_mask = chooser.choose(1u << k);
    for (int i = 0; i < k; ++i)
        if (heavy_mask & (1u << i)) guess.heavy.insert(i);
    guess.components =
        ctx.partitions[chooser.choose(static_cast<uint32_t>(ctx.partitions.size()))];

    ListBundle bundle = build_L1_L2(ctx.inst, ctx.profile, guess, chooser);
    double partial = 0.0;
    for (const auto& e : bundle.L1) partial += e.ball.radius;
    for (const auto& e : bundle.L2) partial += e.ball.radius;
    if (partial >= ctx.incumbent - 1e-12) return std::nullopt;
    if (!build_L3(ctx.inst, ctx.profile, guess, bundle, chooser))
        return std::nullopt;
    return assemble_uniform(ctx.inst, ctx.profile, guess, bundle, chooser);
}

}  // namespace

SolveResult solve_uniform(const Instance& inst, const SolveOptions& opts) {
    if (!(opts.epsilon > 0.0) || opts.epsilon >= 1.0)
        throw std::invalid_argument("epsilon must be in (0, 1)");
    if (!inst.uniform())
        throw std::invalid_argument("solve_uniform needs uniform capacities");
    SolveResult res;
    if (inst.certified_infeasible()) {
        res.outcome = SolveResult::Outcome::infeasible;
        return res;
    }
    const int k = inst.k_eff();
    if (opts.exhaustive && k > opts.exhaustive_k_max) return res;

    const auto partitions = set_partitions(k);
    const double eps_profile = opts.epsilon / 4.0;
    auto stream = ProfileStream::general(inst, eps_profile);
    double best = std::numeric_limits<double>::infinity();

    uint64_t profile_idx = 0;
    bool out_of_budget = false;
    while (auto profile = stream.next()) {
        const uint64_t pidx = profile_idx++;
        double sigma = 0.0;
        for (double r : profile->radii) sigma += r;
        if (4.0 * sigma >= best - 1e-12) continue;

        UniformTrialContext ctx{inst, *profile, partitions, best};
        auto consider = [&](std::optional<Solution> cand, const GuessTrace& trace) {
            if (!cand) return;
            if (cand->cost < best - 1e-12) {
                best = cand->cost;
                ctx.incumbent = best;
                res.solution = std::move(*cand);
                res.best_trace = trace;
            }
        };

        if (opts.exhaustive) {
            ExhaustiveChooser chooser;
            while (true) {
                chooser.begin_run();
                ++res.trials_used;
                consider(run_uniform_trial(ctx, chooser), chooser.trace());
                if (opts.max_trials && res.trials_used >= opts.max_trials) {
                    out_of_budget = true;
                    break;
                }
                if (!chooser.advance()) break;
            }
        } else {
            for (uint64_t t = 0; t < opts.trials; ++t) {
                auto rng = rng_for(opts.seed, (pidx << 24) + t);
                RandomChooser chooser(rng);
                ++res.trials_used;
                consider(run_uniform_trial(ctx, chooser), chooser.trace());
            }
        }
        if (out_of_budget) break;
    }

    res.outcome = res.solution ? SolveResult::Outcome::solved
                               : SolveResult::Outcome::budget_exhausted;
    return res;
}

namespace {

std::optional<Solution> run_bicriteria_trial(const Instance& inst,
                                             const RadiusProfile& profile,
                                             double scale, double incumbent,
                                             Chooser& chooser) {
    const int k = static_cast<int>(profile.radii.size());
    const uint32_t heavy_mask = chooser.choose(1u << k);
    std::vector<int> heavy;
    for (int i = 0; i < k; ++i)
        if (heavy_mask & (1u << i)) heavy.push_back(i);

    std::vector<Ball> balls;
    std::vector<bool> index_used(k, false);
    double cost = 0.0;
    for (int i : heavy) {
        const PointId x = chooser.choose(static_cast<uint32_t>(inst.n()));
        balls.push_back(Ball::at_point(x, 2.0 * profile.radii[i]));
        index_used[i] = true;
        cost += balls.back().radius;
        if (cost >= incumbent - 1e-12) return std::nullopt;
    }

    // Cover the residual greedily with balls for guessed light indices.
    auto uncovered = [&]() -> PointId {
        for (PointId p = 0; p < inst.n(); ++p) {
            bool cov = false;
            for (const auto& b : balls)
                if (inst.metric().contains(b, p)) {
                    cov = true;
                    break;
                }
            if (!cov) return p;
        }
        return -1;
    };
    PointId x;
    while ((x = uncovered()) >= 0) {
        if (static_cast<int>(balls.size()) >= k) return std::nullopt;
        std::vector<int> opts_idx;
        for (int i = 0; i < k; ++i)
            if (!index_used[i]) opts_idx.push_back(i);
        if (opts_idx.empty()) return std::nullopt;
        const int j =
            opts_idx[chooser.choose(static_cast<uint32_t>(opts_idx.size()))];
        index_used[j] = true;
        balls.push_back(Ball::at_point(x, 2.0 * profile.radii[j]));
        cost += balls.back().radius;
        if (cost >= incumbent - 1e-12) return std::nullopt;
    }

    std::set<PointId> centers;
    for (const auto& b : balls)
        if (!centers.insert(b.center_id).second) return std::nullopt;

    double bound = 0.0;
    for (double r : profile.radii) bound += r;
    if (cost > 2.0 * bound + kContainmentSlack) return std::nullopt;

    auto assignment = find_assignment_with_capacity_scale(inst, balls, scale);
    if (!assignment) return std::nullopt;
    Solution sol;
    sol.balls = std::move(balls);
    sol.assignment = std::move(*assignment);
    sol.cost = solution_cost(sol);
    if (!verify_solution(inst, sol, scale).ok()) return std::nullopt;
    return drop_empty_balls(inst, sol);
}

}  // namespace

SolveResult solve_bicriteria_general(const Instance& inst, const SolveOptions& opts) {
    if (!(opts.epsilon > 0.0) || opts.epsilon >= 1.0)
        throw std::invalid_argument("epsilon must be in (0, 1)");
    if (!inst.uniform())
        throw std::invalid_argument("bi-criteria solver needs uniform capacities");
    SolveResult res;
    if (inst.certified_infeasible()) {
        res.outcome = SolveResult::Outcome::infeasible;
        return res;
    }
    const int k = inst.k_eff();
    if (opts.exhaustive && k > opts.exhaustive_k_max) return res;
    const double scale = 1.0 + opts.epsilon;

    auto stream = ProfileStream::general(inst, opts.epsilon);
    double best = std::numeric_limits<double>::infinity();
    uint64_t profile_idx = 0;
    bool out_of_budget = false;
    while (auto profile = stream.next()) {
        const uint64_t pidx = profile_idx++;
        double sigma = 0.0;
        for (double r : profile->radii) sigma += r;
        if (2.0 * sigma >= best - 1e-12) continue;

        auto consider = [&](std::optional<Solution> cand, const GuessTrace& trace) {
            if (!cand) return;
            if (cand->cost < best - 1e-12) {
                best = cand->cost;
                res.solution = std::move(*cand);
                res.best_trace = trace;
            }
        };
        if (opts.exhaustive) {
            ExhaustiveChooser chooser;
            while (true) {
                chooser.begin_run();
                ++res.trials_used;
                consider(run_bicriteria_trial(inst, *profile, scale, best, chooser),
                         chooser.trace());
                if (opts.max_trials && res.trials_used >= opts.max_trials) {
                    out_of_budget = true;
                    break;
                }
                if (!chooser.advance()) break;
            }
        } else {
            for (uint64_t t = 0; t < opts.trials; ++t) {
                auto rng = rng_for(opts.seed, (pidx << 24) + t);
                RandomChooser chooser(rng);
                ++res.trials_used;
                consider(run_bicriteria_trial(inst, *profile, scale, best, chooser),
                         chooser.trace());
            }
        }
        if (out_of_budget) break;
    }
    res.outcome = res.solution ? SolveResult::Outcome::solved
                               : SolveResult::Outcome::budget_exhausted;
    return res;
}

}  // namespace capradii
