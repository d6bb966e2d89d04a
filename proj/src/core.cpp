#include "capradii/core.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace capradii {

Ball ext(const Ball& ball, double delta) {
    if (delta < 0.0) throw std::invalid_argument("ext: negative delta");
    Ball out = ball;
    out.radius = ball.radius + delta;
    return out;
}

double solution_cost(const Solution& sol) {
    double c = 0.0;
    for (const auto& b : sol.balls) c += b.radius;
    return c;
}

bool VerificationReport::has(Kind k) const {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const Violation& v) { return v.kind == k; });
}

std::string VerificationReport::to_string() const {
    if (ok()) return "valid";
    std::ostringstream os;
    for (const auto& v : violations) os << v.detail << "\n";
    return os.str();
}

VerificationReport verify_solution(const Instance& inst, const Solution& sol,
                                   double capacity_scale) {
    VerificationReport rep;
    auto add = [&](VerificationReport::Kind k, const std::string& d) {
        rep.violations.push_back({k, d});
    };
    const int n = inst.n();
    const int nb = static_cast<int>(sol.balls.size());

    if (nb > inst.k())
        add(VerificationReport::Kind::too_many_balls,
            "solution uses " + std::to_string(nb) + " balls, k = " +
                std::to_string(inst.k()));

    for (int b = 0; b < nb; ++b) {
        const Ball& ball = sol.balls[b];
        if (ball.radius < 0.0)
            add(VerificationReport::Kind::negative_radius,
                "ball " + std::to_string(b) + " has negative radius");
        if (ball.point_centered()) {
            if (ball.center_id >= n)
                add(VerificationReport::Kind::bad_center,
                    "ball " + std::to_string(b) + " centered at unknown point");
        } else if (!inst.euclidean() ||
                   static_cast<int>(ball.center_coords.size()) !=
                       inst.metric().dim()) {
            add(VerificationReport::Kind::bad_center,
                "ball " + std::to_string(b) + " has an invalid center");
        }
    }
    if (rep.has(VerificationReport::Kind::bad_center)) return rep;

    if (!inst.euclidean()) {
        std::map<int, int> seen;
        for (int b = 0; b < nb; ++b) {
            auto [it, fresh] = seen.emplace(sol.balls[b].center_id, b);
            if (!fresh)
                add(VerificationReport::Kind::duplicate_center,
                    "balls " + std::to_string(it->second) + " and " +
                        std::to_string(b) + " share center point " +
                        std::to_string(sol.balls[b].center_id));
        }
    }

    if (static_cast<int>(sol.assignment.size()) != n) {
        add(VerificationReport::Kind::bad_assignment,
            "assignment covers " + std::to_string(sol.assignment.size()) +
                " points, n = " + std::to_string(n));
        return rep;
    }

    std::vector<int> load(nb, 0);
    for (int p = 0; p < n; ++p) {
        const int b = sol.assignment[p];
        if (b < 0 || b >= nb) {
            add(VerificationReport::Kind::bad_assignment,
                "point " + std::to_string(p) + " assigned to ball " +
                    std::to_string(b));
            continue;
        }
        ++load[b];
        if (inst.metric().dist_point_to_ball(p, sol.balls[b]) >
            kContainmentSlack)
            add(VerificationReport::Kind::uncovered_point,
                "point " + std::to_string(p) + " lies outside its ball " +
                    std::to_string(b));
    }

    for (int b = 0; b < nb; ++b) {
        long long cap;
        if (sol.balls[b].point_centered())
            cap = inst.capacity(sol.balls[b].center_id);
        else
            cap = inst.uniform_capacity().value_or(0);
        cap = static_cast<long long>(std::floor(capacity_scale * cap + 1e-12));
        if (load[b] > cap)
            add(VerificationReport::Kind::capacity_overflow,
                "ball " + std::to_string(b) + " serves " +
                    std::to_string(load[b]) + " points, capacity " +
                    std::to_string(cap));
    }

    const double recomputed = solution_cost(sol);
    const double tol = kCostRelTol * std::max({1.0, std::abs(recomputed),
                                               std::abs(sol.cost)});
    if (std::abs(recomputed - sol.cost) > tol)
        add(VerificationReport::Kind::cost_mismatch,
            "declared cost " + std::to_string(sol.cost) + ", radii sum to " +
                std::to_string(recomputed));
    return rep;
}

Solution drop_empty_balls(const Instance& inst, Solution sol) {
    const int nb = static_cast<int>(sol.balls.size());
    std::vector<int> load(nb, 0);
    for (int p = 0; p < inst.n(); ++p)
        if (sol.assignment[p] >= 0 && sol.assignment[p] < nb)
            ++load[sol.assignment[p]];
    std::vector<int> remap(nb, -1);
    std::vector<Ball> kept;
    for (int b = 0; b < nb; ++b) {
        if (load[b] == 0) continue;
        remap[b] = static_cast<int>(kept.size());
        kept.push_back(sol.balls[b]);
    }
    if (kept.empty() && nb > 0 && inst.n() > 0) return sol;  // nothing assigned
    for (auto& a : sol.assignment) a = remap[a];
    sol.balls = std::move(kept);
    sol.cost = solution_cost(sol);
    return sol;
}

}  // namespace capradii
