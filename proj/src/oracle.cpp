#include "capradii/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <unordered_map>

#include "capradii/feasibility.hpp"
#include "capradii/meb.hpp"

namespace capradii {

namespace {

using Clock = std::chrono::steady_clock;

struct Deadline {
    Clock::time_point end;
    bool expired() const { return Clock::now() > end; }
};

bool radii_lex_less(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> sa = a, sb = b;
    std::sort(sa.rbegin(), sa.rend());
    std::sort(sb.rbegin(), sb.rend());
    return sa < sb;
}

struct GeneralSearch {
    const Instance& inst;
    Deadline deadline;
    bool out_of_time = false;

    double best_cost = std::numeric_limits<double>::infinity();
    std::vector<int> best_centers;
    std::vector<double> best_radii;
    std::vector<int> best_assignment;

    std::vector<int> centers;
    std::vector<double> radii;
    // Candidate radii per point, computed once: sorted unique distances to
    // all points (0 is always present via dist(c,c)).
    std::vector<std::vector<double>> candidates_of;

    explicit GeneralSearch(const Instance& i, Deadline d) : inst(i), deadline(d) {
        candidates_of.resize(inst.n());
        for (int c = 0; c < inst.n(); ++c) {
            auto& out = candidates_of[c];
            out.reserve(inst.n());
            for (int p = 0; p < inst.n(); ++p) out.push_back(inst.metric().dist(c, p));
            std::sort(out.begin(), out.end());
            out.erase(std::unique(out.begin(), out.end()), out.end());
        }
    }

    void try_candidate() {
        double cost = 0.0;
        for (double r : radii) cost += r;
        if (cost > best_cost + 1e-12) return;
        // Fast coverage check before the flow.
        std::vector<Ball> balls;
        balls.reserve(centers.size());
        for (size_t i = 0; i < centers.size(); ++i)
            balls.push_back(Ball::at_point(centers[i], radii[i]));
        for (int p = 0; p < inst.n(); ++p) {
            bool covered = false;
            for (const auto& b : balls)
                if (inst.metric().dist_point_to_ball(p, b) <= kContainmentSlack) {
                    covered = true;
                    break;
                }
            if (!covered) return;
        }
        auto assignment = find_assignment(inst, balls);
        if (!assignment) return;
        const bool better =
            cost < best_cost - 1e-12 ||
            (cost <= best_cost + 1e-12 &&
             (radii_lex_less(radii, best_radii) ||
              (!radii_lex_less(best_radii, radii) && centers < best_centers)));
        if (better) {
            best_cost = cost;
            best_centers = centers;
            best_radii = radii;
            best_assignment = *assignment;
        }
    }

    void choose_radii(size_t i, double partial) {
        if (out_of_time) return;
        if (i == centers.size()) {
            try_candidate();
            return;
        }
        for (double r : candidates_of[centers[i]]) {
            if (partial + r > best_cost + 1e-12) break;  // candidates ascend
            radii[i] = r;
            choose_radii(i + 1, partial + r);
        }
    }

    void choose_centers(int from, int remaining) {
        if (out_of_time || deadline.expired()) {
            out_of_time = true;
            return;
        }
        if (!centers.empty()) {
            radii.assign(centers.size(), 0.0);
            choose_radii(0, 0.0);
        }
        if (remaining == 0) return;
        for (int c = from; c < inst.n(); ++c) {
            if (inst.capacity(c) == 0) continue;  // can never serve a point
            centers.push_back(c);
            choose_centers(c + 1, remaining - 1);
            centers.pop_back();
        }
    }
};

OracleResult budget_violation(const Instance& inst, const OracleBudget& budget) {
    OracleResult res;
    if (inst.n() > budget.max_n || inst.k_eff() > budget.max_k) {
        res.status = OracleStatus::budget_exceeded;
        return res;
    }
    if (inst.certified_infeasible()) {
        res.status = OracleStatus::infeasible;
        return res;
    }
    res.status = OracleStatus::optimal;  // caller continues
    return res;
}

}  // namespace

OracleResult solve_exact_general(const Instance& inst, const OracleBudget& budget) {
    OracleResult res = budget_violation(inst, budget);
    if (res.status != OracleStatus::optimal) return res;

    Deadline deadline{Clock::now() +
                      std::chrono::duration_cast<Clock::duration>(
                          std::chrono::duration<double>(budget.time_limit_s))};
    GeneralSearch search(inst, deadline);
    search.choose_centers(0, inst.k_eff());
    if (search.out_of_time) {
        res.status = OracleStatus::budget_exceeded;
        res.solution.reset();
        return res;
    }
    if (!std::isfinite(search.best_cost)) {
        res.status = OracleStatus::infeasible;
        return res;
    }
    Solution sol;
    for (size_t i = 0; i < search.best_centers.size(); ++i)
        sol.balls.push_back(
            Ball::at_point(search.best_centers[i], search.best_radii[i]));
    sol.assignment = search.best_assignment;
    sol.cost = solution_cost(sol);
    res.status = OracleStatus::optimal;
    res.solution = std::move(sol);
    return res;
}

namespace {

struct EuclideanSearch {
    const Instance& inst;
    Deadline deadline;
    bool out_of_time = false;
    long long cap = 0;
    int max_parts = 0;

    std::vector<int> part_of;                   // restricted-growth string
    std::vector<std::vector<int>> members;      // current parts
    std::unordered_map<uint64_t, Ball> meb_cache;

    double best_cost = std::numeric_limits<double>::infinity();
    std::vector<int> best_part_of;
    int best_parts = 0;

    explicit EuclideanSearch(const Instance& i, Deadline d)
        : inst(i), deadline(d), part_of(i.n(), -1) {}

    const Ball& part_meb(const std::vector<int>& part) {
        uint64_t key = 0;
        for (int p : part) key |= (1ull << p);
        auto it = meb_cache.find(key);
        if (it != meb_cache.end()) return it->second;
        PointList pts;
        pts.reserve(part.size());
        for (int p : part) pts.push_back(inst.metric().points()[p]);
        return meb_cache.emplace(key, meb_exact_small_d(pts)).first->second;
    }

    double partial_cost() {
        double c = 0.0;
        for (const auto& part : members) c += part_meb(part).radius;
        return c;
    }

    void dfs(int p) {
        if (out_of_time || deadline.expired()) {
            out_of_time = true;
            return;
        }
        const double lower = partial_cost();  // MEBs only grow with members
        if (lower > best_cost + 1e-12) return;
        if (p == inst.n()) {
            if (lower < best_cost - 1e-12) {
                best_cost = lower;
                best_part_of = part_of;
                best_parts = static_cast<int>(members.size());
            }
            return;
        }
        for (size_t t = 0; t <= members.size(); ++t) {
            const bool fresh = t == members.size();
            if (fresh && (static_cast<int>(members.size()) == max_parts || cap < 1))
                break;
            if (!fresh && static_cast<long long>(members[t].size()) >= cap)
                continue;
            if (fresh) members.emplace_back();
            members[t].push_back(p);
            part_of[p] = static_cast<int>(t);
            dfs(p + 1);
            part_of[p] = -1;
            members[t].pop_back();
            if (fresh) members.pop_back();
        }
    }
};

}  // namespace

OracleResult solve_exact_euclidean(const Instance& inst, const OracleBudget& budget) {
    OracleResult res;
    if (!inst.euclidean() || inst.metric().dim() > 4) {
        res.status = OracleStatus::budget_exceeded;
        return res;
    }
    res = budget_violation(inst, budget);
    if (res.status != OracleStatus::optimal) return res;

    Deadline deadline{Clock::now() +
                      std::chrono::duration_cast<Clock::duration>(
                          std::chrono::duration<double>(budget.time_limit_s))};
    EuclideanSearch search(inst, deadline);
    search.cap = *inst.uniform_capacity();
    search.max_parts = inst.k_eff();
    search.dfs(0);
    if (search.out_of_time) {
        res.status = OracleStatus::budget_exceeded;
        return res;
    }
    if (!std::isfinite(search.best_cost)) {
        res.status = OracleStatus::infeasible;
        return res;
    }
    Solution sol;
    std::vector<std::vector<int>> parts(search.best_parts);
    for (int p = 0; p < inst.n(); ++p)
        parts[search.best_part_of[p]].push_back(p);
    for (const auto& part : parts) {
        PointList pts;
        for (int p : part) pts.push_back(inst.metric().points()[p]);
        sol.balls.push_back(meb_exact_small_d(pts));
    }
    sol.assignment = search.best_part_of;
    sol.cost = solution_cost(sol);
    res.status = OracleStatus::optimal;
    res.solution = std::move(sol);
    return res;
}

BoundResult lower_bound_uncapacitated(const Instance& inst, const OracleBudget& budget) {
    BoundResult out;
    OracleResult inner;
    if (inst.euclidean()) {
        Instance relaxed = Instance::euclidean(inst.k(), inst.n(),
                                               inst.metric().points());
        inner = solve_exact_euclidean(relaxed, budget);
    } else {
        const int n = inst.n();
        std::vector<double> flat(static_cast<size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                flat[static_cast<size_t>(i) * n + j] = inst.metric().dist(i, j);
        Instance relaxed = Instance::general(
            inst.k(), MetricBackend::from_matrix(n, std::move(flat)),
            std::vector<int>(n, n));
        inner = solve_exact_general(relaxed, budget);
    }
    out.status = inner.status;
    out.value = inner.solution ? inner.solution->cost : 0.0;
    return out;
}

}  // namespace capradii
