#include "capradii/euclidean.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

#include "capradii/feasibility.hpp"
#include "capradii/uniform.hpp"

namespace capradii {

namespace {

Ball meb_of_members(const Instance& inst, const std::vector<PointId>& members) {
    PointList pts;
    pts.reserve(members.size());
    for (PointId p : members) pts.push_back(inst.metric().points()[p]);
    if (inst.metric().dim() <= 4) return meb_exact_small_d(pts);
    return meb_approx(pts, 0.01);
}

int coreset_member_cap(double epsilon) {
    return static_cast<int>(std::ceil(32.0 / (epsilon * epsilon))) + 1;
}

}  // namespace

CoreSet grow_coreset_trial(const Instance& inst, int i,
                           const RadiusProfile& profile, double epsilon,
                           Chooser& chooser, const CoresetGrowthOptions& opts) {
    const double r_i = profile.radii[i];
    std::vector<PointId> pool = opts.pool;
    if (pool.empty()) {
        pool.resize(inst.n());
        std::iota(pool.begin(), pool.end(), 0);
    }
    const int cap = coreset_member_cap(epsilon);

    CoreSet S;
    S.members.push_back(pool[chooser.choose(static_cast<uint32_t>(pool.size()))]);
    S.meb = meb_of_members(inst, S.members);

    while (static_cast<int>(S.members.size()) < cap) {
        const Ball reach = S.extended(epsilon, r_i);
        std::vector<PointId> outside;
        for (PointId p : pool)
            if (!inst.metric().contains(reach, p)) outside.push_back(p);
        if (static_cast<double>(outside.size()) <= opts.residual_threshold)
            break;
        if (opts.stop_guess && chooser.choose(2) == 1) break;
        S.members.push_back(
            outside[chooser.choose(static_cast<uint32_t>(outside.size()))]);
        S.meb = meb_of_members(inst, S.members);
    }
    return S;
}

CoreSet grow_coreset_trial(const Instance& inst, int i,
                           const RadiusProfile& profile, double epsilon,
                           std::mt19937_64& rng) {
    RandomChooser chooser(rng);
    CoresetGrowthOptions opts;
    opts.residual_threshold =
        static_cast<double>(*inst.uniform_capacity()) / (2.0 * inst.k_eff());
    return grow_coreset_trial(inst, i, profile, epsilon, chooser, opts);
}

namespace {

struct DisjointSet {
    std::vector<int> parent;
    explicit DisjointSet(int n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Merge a list of balls into one enclosing ball: absorb intersecting balls
// lowest-index first, bridge to the nearest chunk when none intersects.
Ball merge_balls(const std::vector<Ball>& balls) {
    std::vector<bool> used(balls.size(), false);
    Ball merged = balls[0];
    used[0] = true;
    for (size_t step = 1; step < balls.size(); ++step) {
        int next = -1;
        double next_gap = std::numeric_limits<double>::infinity();
        for (size_t b = 0; b < balls.size(); ++b) {
            if (used[b]) continue;
            const double gap =
                coord_dist(merged.center_coords, balls[b].center_coords) -
                merged.radius - balls[b].radius;
            if (gap <= kContainmentSlack) {
                next = static_cast<int>(b);
                break;
            }
            if (gap < next_gap) {
                next_gap = gap;
                next = static_cast<int>(b);
            }
        }
        merged = meb_of_two_balls(merged, balls[next]);
        used[next] = true;
    }
    return merged;
}

struct Euclid2Params {
    double eps_cover;    // extension factor on coreset MEBs
    double eps_profile;  // profile granularity
    double cost_factor;  // accepted cost <= cost_factor * sum(profile)
};

struct Euclid2Trial {
    const Instance& inst;
    const RadiusProfile& profile;
    const Euclid2Params& params;
    const std::vector<std::vector<std::vector<std::set<int>>>>& partition_table;
    double incumbent;
};

std::optional<Solution> run_euclid2_trial(const Euclid2Trial& ctx, Chooser& chooser) {
    const Instance& inst = ctx.inst;
    const RadiusProfile& profile = ctx.profile;
    const int k = static_cast<int>(profile.radii.size());
    const double eps_c = ctx.params.eps_cover;
    const long long U = *inst.uniform_capacity();

    const uint32_t heavy_mask = chooser.choose(1u << k);
    std::vector<int> I;
    std::map<int, CoreSet> S;
    CoresetGrowthOptions gopts;
    gopts.residual_threshold = static_cast<double>(U) / (2.0 * k);
    for (int i = 0; i < k; ++i) {
        if (!(heavy_mask & (1u << i))) continue;
        S[i] = grow_coreset_trial(inst, i, profile, eps_c, chooser, gopts);
        I.push_back(i);
    }

    // Greedy completion: every uncovered point joins a guessed index's set.
    const int member_cap = coreset_member_cap(eps_c);
    auto first_uncovered = [&]() -> PointId {
        for (PointId p = 0; p < inst.n(); ++p) {
            bool cov = false;
            for (int i : I)
                if (inst.metric().contains(S[i].extended(eps_c, profile.radii[i]), p)) {
                    cov = true;
                    break;
                }
            if (!cov) return p;
        }
        return -1;
    };
    PointId x;
    while ((x = first_uncovered()) >= 0) {
        const int i = static_cast<int>(chooser.choose(static_cast<uint32_t>(k)));
        if (!S.count(i)) {
            S[i] = CoreSet{};
            I.push_back(i);
            std::sort(I.begin(), I.end());
        }
        if (static_cast<int>(S[i].members.size()) >= member_cap)
            return std::nullopt;
        S[i].members.push_back(x);
        S[i].meb = meb_of_members(inst, S[i].members);
    }

    // Surrogate intersection graph: must-link where two extended MEBs
    // provably intersect; everything else is guessed through the partition.
    DisjointSet dsu(k);
    for (size_t a = 0; a < I.size(); ++a)
        for (size_t b = a + 1; b < I.size(); ++b) {
            const Ball ba = S[I[a]].extended(eps_c, profile.radii[I[a]]);
            const Ball bb = S[I[b]].extended(eps_c, profile.radii[I[b]]);
            if (coord_dist(ba.center_coords, bb.center_coords) <=
                ba.radius + bb.radius + kContainmentSlack)
                dsu.unite(I[a], I[b]);
        }
    std::map<int, std::vector<int>> block_of;
    for (int i = 0; i < k; ++i) block_of[dsu.find(i)].push_back(i);
    std::vector<std::vector<int>> elems;
    for (auto& [root, members] : block_of) elems.push_back(members);

    const auto& partitions = ctx.partition_table[elems.size()];
    const auto& chosen =
        partitions[chooser.choose(static_cast<uint32_t>(partitions.size()))];
    std::vector<std::set<int>> comps;
    for (const auto& part : chosen) {
        std::set<int> comp;
        for (int e : part)
            comp.insert(elems[e].begin(), elems[e].end());
        comps.push_back(std::move(comp));
    }

    std::set<int> in_I(I.begin(), I.end());
    std::vector<Ball> balls;
    double cost = 0.0;
    for (const auto& comp : comps) {
        std::vector<int> members_I;
        for (int i : comp)
            if (in_I.count(i)) members_I.push_back(i);
        const bool has_unknown = members_I.size() < comp.size();
        if (members_I.empty()) continue;  // carries no surrogate, serves nothing
        if (has_unknown) {
            // L1: the extended MEBs themselves; L2: one covering ball.
            std::vector<Ball> ext_balls;
            for (int i : members_I) {
                ext_balls.push_back(S[i].extended(eps_c, profile.radii[i]));
                balls.push_back(ext_balls.back());
                cost += ext_balls.back().radius;
            }
            const Ball merged = merge_balls(ext_balls);
            double rad_c = 0.0;
            for (int i : comp) rad_c += profile.radii[i];
            const Ball cover = Ball::at_coords(merged.center_coords,
                                               (1.0 + eps_c) * rad_c);
            // The covering ball must contain its component's points.
            for (PointId p = 0; p < inst.n(); ++p) {
                bool in_comp = false;
                for (const auto& eb : ext_balls)
                    if (inst.metric().contains(eb, p)) {
                        in_comp = true;
                        break;
                    }
                if (in_comp && !inst.metric().contains(cover, p))
                    return std::nullopt;
            }
            balls.push_back(cover);
            cost += cover.radius;
        } else {
            // L3: a ball of radius 2 r_i at a coreset point.
            for (int i : members_I) {
                const PointId anchor =
                    *std::min_element(S[i].members.begin(), S[i].members.end());
                balls.push_back(Ball::at_coords(inst.metric().points()[anchor],
                                                2.0 * profile.radii[i]));
                cost += balls.back().radius;
            }
        }
        if (cost >= ctx.incumbent - 1e-12) return std::nullopt;
    }
    if (balls.empty() || static_cast<int>(balls.size()) > k) return std::nullopt;

    double sigma = 0.0;
    for (double r : profile.radii) sigma += r;
    if (cost > ctx.params.cost_factor * sigma + kContainmentSlack)
        return std::nullopt;

    auto assignment = find_assignment(inst, balls);
    if (!assignment) return std::nullopt;
    Solution sol;
    sol.balls = std::move(balls);
    sol.assignment = std::move(*assignment);
    sol.cost = solution_cost(sol);
    if (!verify_solution(inst, sol).ok()) return std::nullopt;
    return drop_empty_balls(inst, sol);
}

void require_uniform_euclidean(const Instance& inst, const SolveOptions& opts) {
    if (!(opts.epsilon > 0.0) || opts.epsilon >= 1.0)
        throw std::invalid_argument("epsilon must be in (0, 1)");
    if (!inst.euclidean())
        throw std::invalid_argument("solver needs a euclidean instance");
}

}  // namespace

SolveResult solve_euclid_2approx(const Instance& inst, const SolveOptions& opts) {
    require_uniform_euclidean(inst, opts);
    SolveResult res;
    if (inst.certified_infeasible()) {
        res.outcome = SolveResult::Outcome::infeasible;
        return res;
    }
    const int k = inst.k_eff();

    Euclid2Params params;
    params.eps_cover = opts.epsilon / 4.0;
    params.eps_profile = 0.3 * opts.epsilon;
    params.cost_factor = 2.0 + 2.0 * params.eps_cover;

    std::vector<std::vector<std::vector<std::set<int>>>> partition_table(k + 1);
    for (int m = 0; m <= k; ++m) partition_table[m] = set_partitions(m);

    auto stream = ProfileStream::euclidean(inst, params.eps_profile);
    double best = std::numeric_limits<double>::infinity();
    uint64_t profile_idx = 0;
    while (auto profile = stream.next()) {
        const uint64_t pidx = profile_idx++;
        double sigma = 0.0;
        for (double r : profile->radii) sigma += r;
        if (params.cost_factor * sigma >= best - 1e-12) continue;

        Euclid2Trial ctx{inst, *profile, params, partition_table, best};
        for (uint64_t t = 0; t < opts.trials; ++t) {
            auto rng = rng_for(opts.seed, (pidx << 24) + t);
            RandomChooser chooser(rng);
            ++res.trials_used;
            auto cand = run_euclid2_trial(ctx, chooser);
            if (cand && cand->cost < best - 1e-12) {
                best = cand->cost;
                ctx.incumbent = best;
                res.solution = std::move(*cand);
                res.best_trace = chooser.trace();
            }
        }
    }
    res.outcome = res.solution ? SolveResult::Outcome::solved
                               : SolveResult::Outcome::budget_exhausted;
    return res;
}

SolveResult solve_euclid_bicriteria(const Instance& inst, const SolveOptions& opts) {
    require_uniform_euclidean(inst, opts);
    SolveResult res;
    if (inst.certified_infeasible()) {
        res.outcome = SolveResult::Outcome::infeasible;
        return res;
    }
    const int k = inst.k_eff();
    const double eps = opts.epsilon;
    const double scale = 1.0 + eps;
    const long long U = *inst.uniform_capacity();

    auto stream = ProfileStream::euclidean(inst, eps / 4.0);
    double best = std::numeric_limits<double>::infinity();
    uint64_t profile_idx = 0;
    while (auto profile = stream.next()) {
        const uint64_t pidx = profile_idx++;
        double sigma = 0.0;
        for (double r : profile->radii) sigma += r;
        if ((1.0 + eps) * sigma >= best - 1e-12) continue;

        for (uint64_t t = 0; t < opts.trials; ++t) {
            auto rng = rng_for(opts.seed, (pidx << 24) + t);
            RandomChooser chooser(rng);
            ++res.trials_used;

            const uint32_t heavy_mask = chooser.choose(1u << k);
            std::vector<int> I;
            std::map<int, CoreSet> S;
            CoresetGrowthOptions gopts;
            gopts.residual_threshold = eps * static_cast<double>(U) / (2.0 * k);
            for (int i = 0; i < k; ++i) {
                if (!(heavy_mask & (1u << i))) continue;
                S[i] = grow_coreset_trial(inst, i, *profile, eps, chooser, gopts);
                I.push_back(i);
            }
            const int member_cap = coreset_member_cap(eps);
            bool failed = false;
            while (!failed) {
                PointId x = -1;
                for (PointId p = 0; p < inst.n() && x < 0; ++p) {
                    bool cov = false;
                    for (int i : I)
                        if (inst.metric().contains(
                                S[i].extended(eps, profile->radii[i]), p)) {
                            cov = true;
                            break;
                        }
                    if (!cov) x = p;
                }
                if (x < 0) break;
                const int i = static_cast<int>(chooser.choose(static_cast<uint32_t>(k)));
                if (!S.count(i)) {
                    S[i] = CoreSet{};
                    I.push_back(i);
                    std::sort(I.begin(), I.end());
                }
                if (static_cast<int>(S[i].members.size()) >= member_cap) {
                    failed = true;
                    break;
                }
                S[i].members.push_back(x);
                S[i].meb = meb_of_members(inst, S[i].members);
            }
            if (failed) continue;

            std::vector<Ball> balls;
            double cost = 0.0;
            for (int i : I) {
                balls.push_back(S[i].extended(eps, profile->radii[i]));
                cost += balls.back().radius;
            }
            if (balls.empty() || cost > (1.0 + eps) * sigma + kContainmentSlack)
                continue;
            if (cost >= best - 1e-12) continue;
            auto assignment = find_assignment_with_capacity_scale(inst, balls, scale);
            if (!assignment) continue;
            Solution sol;
            sol.balls = std::move(balls);
            sol.assignment = std::move(*assignment);
            sol.cost = solution_cost(sol);
            if (!verify_solution(inst, sol, scale).ok()) continue;
            sol = drop_empty_balls(inst, sol);
            if (sol.cost < best - 1e-12) {
                best = sol.cost;
                res.solution = std::move(sol);
                res.best_trace = chooser.trace();
            }
        }
    }
    res.outcome = res.solution ? SolveResult::Outcome::solved
                               : SolveResult::Outcome::budget_exhausted;
    return res;
}

PointList ptas_grid_cells(const Ball& covering_ball, double r1, int k, int d,
                          double eps_grid) {
    PointList cells;
    const double L = covering_ball.radius + r1;
    const double h = 2.0 * eps_grid * r1 / (k * std::sqrt(static_cast<double>(d)));
    if (h <= 0.0) {
        cells.push_back(covering_ball.center_coords);
        return cells;
    }
    const int per_axis = std::max(1, static_cast<int>(std::ceil(2.0 * L / h)));
    std::vector<int> idx(d, 0);
    while (true) {
        std::vector<double> cell(d);
        for (int a = 0; a < d; ++a)
            cell[a] = covering_ball.center_coords[a] - L + (idx[a] + 0.5) * h;
        cells.push_back(std::move(cell));
        int a = d - 1;
        while (a >= 0 && ++idx[a] == per_axis) idx[a--] = 0;
        if (a < 0) break;
    }
    return cells;
}

SolveResult solve_euclid_ptas(const Instance& inst, const SolveOptions& opts) {
    require_uniform_euclidean(inst, opts);
    SolveResult res;
    if (inst.certified_infeasible()) {
        res.outcome = SolveResult::Outcome::infeasible;
        return res;
    }
    const int d = inst.metric().dim();
    const int n = inst.n();
    if (d > 3 || n > 64) return res;  // enumeration budget
    const int k = inst.k_eff();
    const long long U = *inst.uniform_capacity();
    const double eps_profile = opts.epsilon / 4.0;
    const double eps_grid = opts.epsilon / 3.0;

    const uint64_t full_mask = (n == 64) ? ~0ull : ((1ull << n) - 1);
    auto stream = ProfileStream::euclidean(inst, eps_profile);
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> best_used;
    std::vector<Ball> best_balls;
    std::vector<int> best_assignment;

    while (auto profile = stream.next()) {
        const double r1 = profile->radii[0];
        double sigma = 0.0;
        for (double r : profile->radii) sigma += r;
        if (sigma + eps_grid * r1 >= best - 1e-12) continue;

        // Greedy cover by at most k balls of radius 2 r1.
        std::vector<PointId> t_centers;
        {
            bool coverable = true;
            for (PointId p = 0; p < n; ++p) {
                bool cov = false;
                for (PointId c : t_centers)
                    if (inst.metric().dist(p, c) <= 2.0 * r1 + kContainmentSlack) {
                        cov = true;
                        break;
                    }
                if (cov) continue;
                if (static_cast<int>(t_centers.size()) == k) {
                    coverable = false;
                    break;
                }
                t_centers.push_back(p);
            }
            if (!coverable) continue;
        }

        // Components of the T-ball graph (edge when the gap is below 2 r1).
        DisjointSet dsu(static_cast<int>(t_centers.size()));
        for (size_t a = 0; a < t_centers.size(); ++a)
            for (size_t b = a + 1; b < t_centers.size(); ++b)
                if (inst.metric().dist(t_centers[a], t_centers[b]) < 6.0 * r1)
                    dsu.unite(static_cast<int>(a), static_cast<int>(b));
        std::map<int, std::vector<int>> comp_map;
        for (size_t a = 0; a < t_centers.size(); ++a)
            comp_map[dsu.find(static_cast<int>(a))].push_back(static_cast<int>(a));

        // Candidate cells per component, deduplicated by coverage mask per
        // distinct candidate radius.
        std::vector<double> rhos(k);
        for (int i = 0; i < k; ++i)
            rhos[i] = profile->radii[i] + eps_grid * r1 / k;

        struct Option {
            uint64_t mask;
            std::vector<double> cell;
        };
        // Candidate cells pooled over components, deduplicated by coverage
        // mask per distinct candidate radius; a cell covering nothing is
        // useless because unused slots are enumerated separately.
        std::vector<std::vector<Option>> options_for(k);
        {
            std::map<double, std::vector<Option>> by_rho;
            std::map<double, std::set<uint64_t>> seen_by_rho;
            const std::set<double> distinct_rhos(rhos.begin(), rhos.end());
            for (const auto& [root, members] : comp_map) {
                PointList cells;
                if (r1 == 0.0) {
                    for (int a : members)
                        cells.push_back(inst.metric().points()[t_centers[a]]);
                } else {
                    std::vector<Ball> t_balls;
                    for (int a : members)
                        t_balls.push_back(Ball::at_coords(
                            inst.metric().points()[t_centers[a]], 2.0 * r1));
                    const Ball R_j = merge_balls(t_balls);
                    cells = ptas_grid_cells(R_j, r1, k, d, eps_grid);
                }
                for (double rho : distinct_rhos) {
                    auto& opts_list = by_rho[rho];
                    auto& seen = seen_by_rho[rho];
                    for (const auto& cell : cells) {
                        uint64_t mask = 0;
                        for (PointId p = 0; p < n; ++p)
                            if (coord_dist(cell, inst.metric().points()[p]) <=
                                rho + kContainmentSlack)
                                mask |= (1ull << p);
                        if (mask == 0) continue;
                        if (seen.insert(mask).second)
                            opts_list.push_back({mask, cell});
                    }
                }
            }
            for (int i = 0; i < k; ++i) options_for[i] = by_rho[rhos[i]];
        }

        // Enumerate center assignments: each slot is unused (-1) or picks an
        // option; slots with equal radii are interchangeable, so their
        // choices are forced non-decreasing (-1 sorts first).
        std::vector<Ball> cand_balls;
        std::function<void(int, uint64_t, double, int)> enumerate =
            [&](int i, uint64_t mask, double cost, int min_choice) {
                if (cost >= best - 1e-12) return;
                if (i == k) {
                    if (mask != full_mask || cand_balls.empty()) return;
                    auto assignment = find_assignment_with_capacities(
                        inst, cand_balls,
                        std::vector<long long>(cand_balls.size(), U));
                    if (!assignment) return;
                    best = cost;
                    best_balls = cand_balls;
                    best_assignment = *assignment;
                    return;
                }
                const bool tied = i > 0 && rhos[i] == rhos[i - 1];
                const int lo = tied ? min_choice : -1;
                if (lo <= -1) enumerate(i + 1, mask, cost, -1);
                const auto& opts_list = options_for[i];
                for (int o = std::max(0, lo);
                     o < static_cast<int>(opts_list.size()); ++o) {
                    cand_balls.push_back(
                        Ball::at_coords(opts_list[o].cell, rhos[i]));
                    enumerate(i + 1, mask | opts_list[o].mask, cost + rhos[i], o);
                    cand_balls.pop_back();
                }
            };
        enumerate(0, 0, 0.0, -1);
    }

    if (!best_balls.empty()) {
        Solution sol;
        sol.balls = best_balls;
        sol.assignment = best_assignment;
        sol.cost = solution_cost(sol);
        if (verify_solution(inst, sol).ok()) {
            res.solution = drop_empty_balls(inst, sol);
            res.outcome = SolveResult::Outcome::solved;
            return res;
        }
    }
    res.outcome = SolveResult::Outcome::budget_exhausted;
    return res;
}

}  // namespace capradii
