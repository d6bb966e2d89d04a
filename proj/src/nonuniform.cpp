#include "capradii/nonuniform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "capradii/feasibility.hpp"

namespace capradii {

namespace {

double radius_of(const RadiusProfile& profile, int i) { return profile.radii[i]; }

std::vector<int> sorted_complement(int k, const std::set<int>& a,
                                   const std::set<int>& b = {}) {
    std::vector<int> out;
    for (int i = 0; i < k; ++i)
        if (!a.count(i) && !b.count(i)) out.push_back(i);
    return out;
}

bool balls_disjoint(const Instance& inst, const Ball& a, const Ball& b) {
    const double d = a.point_centered()
                         ? inst.metric().dist_to_center(a.center_id, b)
                         : inst.metric().dist_to_center(b.center_id, a);
    return d > a.radius + b.radius + kContainmentSlack;
}

// Available max-capacity center within `radius` of `around`; -1 when none.
PointId best_center_within(const Instance& inst, const Configuration& cfg,
                           PointId around, double radius) {
    PointId best = -1;
    for (PointId p = 0; p < inst.n(); ++p) {
        if (!cfg.available(p)) continue;
        if (inst.metric().dist(around, p) > radius + kContainmentSlack) continue;
        if (best == -1 || inst.capacity(p) > inst.capacity(best)) best = p;
    }
    return best;
}

int pick(Chooser& chooser, const std::vector<int>& options) {
    return options[chooser.choose(static_cast<uint32_t>(options.size()))];
}

}  // namespace

PointId Configuration::first_uncovered(const Instance& inst) const {
    for (PointId p = 0; p < inst.n(); ++p) {
        bool covered = false;
        for (const auto& [i, ball] : B1)
            if (inst.metric().contains(ball, p)) {
                covered = true;
                break;
            }
        if (!covered) return p;
    }
    return -1;
}

void Configuration::clear_replacements() {
    for (const auto& [i, ball] : B2) used_centers.erase(ball.center_id);
    I2.clear();
    B2.clear();
}

std::vector<std::string> configuration_violations(const Instance& inst,
                                                  const RadiusProfile& profile,
                                                  const Configuration& cfg) {
    std::vector<std::string> out;
    for (int i : cfg.I1)
        if (cfg.I2.count(i)) out.push_back("index in both I1 and I2");
    std::set<PointId> centers;
    auto check_center = [&](const Ball& b) {
        if (!centers.insert(b.center_id).second)
            out.push_back("center reused across B1/B2");
        if (!cfg.used_centers.count(b.center_id))
            out.push_back("ball center missing from used set");
    };
    for (const auto& [i, b] : cfg.B1) {
        if (!cfg.I1.count(i)) out.push_back("B1 ball without index in I1");
        if (b.radius > 5.0 * radius_of(profile, i) + kContainmentSlack)
            out.push_back("B1 ball exceeds 5 r_i");
        check_center(b);
    }
    for (const auto& [i, b] : cfg.B2) {
        if (!cfg.I2.count(i)) out.push_back("B2 ball without index in I2");
        if (std::abs(b.radius - radius_of(profile, i)) > 1e-12)
            out.push_back("B2 ball radius differs from r_i");
        check_center(b);
    }
    for (auto it = cfg.B2.begin(); it != cfg.B2.end(); ++it)
        for (auto jt = std::next(it); jt != cfg.B2.end(); ++jt)
            if (!balls_disjoint(inst, it->second, jt->second))
                out.push_back("B2 balls intersect");
    return out;
}

std::optional<Configuration> phase1_cover_step(const Instance& inst,
                                               const RadiusProfile& profile,
                                               const Configuration& cfg,
                                               Chooser& chooser) {
    const int k = static_cast<int>(profile.radii.size());
    const PointId x = cfg.first_uncovered(inst);
    if (x < 0) return std::nullopt;
    const auto free_idx = sorted_complement(k, cfg.I1, cfg.I2);
    if (free_idx.empty()) return std::nullopt;
    const int i = pick(chooser, free_idx);
    const double r_i = radius_of(profile, i);

    const PointId c = best_center_within(inst, cfg, x, r_i);
    if (c < 0) return std::nullopt;

    Configuration next = cfg;
    if (chooser.choose(2) == 0) {
        next.I1.insert(i);
        next.B1[i] = Ball::at_point(c, 3.0 * r_i);
    } else {
        const int j = pick(chooser, free_idx);
        next.I1.insert(j);
        next.B1[j] = Ball::at_point(c, radius_of(profile, j));
    }
    next.used_centers.insert(c);
    return next;
}

std::optional<Configuration> phase2_merge_step(const Instance& inst,
                                               const RadiusProfile& profile,
                                               const Configuration& cfg,
                                               Chooser& chooser) {
    const int k = static_cast<int>(profile.radii.size());
    if (cfg.I1.empty()) return std::nullopt;
    const std::vector<int> in_I1(cfg.I1.begin(), cfg.I1.end());
    const auto free_idx = sorted_complement(k, cfg.I1, cfg.I2);
    if (free_idx.empty()) return std::nullopt;

    const int i = pick(chooser, in_I1);
    const int j = pick(chooser, free_idx);
    const double r_i = radius_of(profile, i);
    const double r_j = radius_of(profile, j);
    const PointId x_i = cfg.B1.at(i).center_id;

    const PointId x = best_center_within(inst, cfg, x_i, 5.0 * r_i + r_j);
    if (x < 0) return std::nullopt;

    Configuration next = cfg;
    if (chooser.choose(2) == 0) {
        const int jp = pick(chooser, free_idx);
        next.I1.insert(jp);
        next.B1[jp] = Ball::at_point(x, radius_of(profile, jp));
    } else {
        next.I1.insert(j);
        next.B1[j] = Ball::at_point(x, 2.0 * (5.0 * r_i + r_j) + r_j);
    }
    next.used_centers.insert(x);
    return next;
}

std::optional<Phase3Step> phase3_replace_step(const Instance& inst,
                                              const RadiusProfile& profile,
                                              const Configuration& cfg,
                                              Chooser& chooser) {
    const int k = static_cast<int>(profile.radii.size());
    const auto free_idx = sorted_complement(k, cfg.I1, cfg.I2);
    if (free_idx.empty() || cfg.I1.empty()) return std::nullopt;
    const int i = pick(chooser, free_idx);
    const double r_i = radius_of(profile, i);

    // Guess the subset T_i of I1 whose extended balls trap B*_i.
    const std::vector<int> in_I1(cfg.I1.begin(), cfg.I1.end());
    const uint32_t subsets = (1u << in_I1.size()) - 1;
    const uint32_t mask = 1u + chooser.choose(subsets);
    std::set<int> T;
    for (size_t b = 0; b < in_I1.size(); ++b)
        if (mask & (1u << b)) T.insert(in_I1[b]);

    std::vector<PointId> P_i;
    for (PointId p = 0; p < inst.n(); ++p) {
        bool inside = true;
        for (int j : T)
            if (!inst.metric().contains(
                    ext(cfg.B1.at(j), 10.0 * radius_of(profile, j)), p)) {
                inside = false;
                break;
            }
        if (!inside) continue;
        for (int s : cfg.I1) {
            if (T.count(s)) continue;
            if (inst.metric().contains(cfg.B1.at(s), p)) {
                inside = false;
                break;
            }
        }
        if (inside) P_i.push_back(p);
    }
    if (P_i.empty()) return std::nullopt;

    // Far-point sequence: pairwise distance >= 4 r_i, balls disjoint from
    // B2, each maximizing min(eta_x, |B(x, r_i) cap P_i|). Stops at k+1.
    std::vector<PointId> xs;
    while (static_cast<int>(xs.size()) < k + 1) {
        PointId best = -1;
        long long best_score = -1;
        for (PointId p : P_i) {
            if (!cfg.available(p)) continue;
            bool far = true;
            for (PointId q : xs)
                if (inst.metric().dist(p, q) < 4.0 * r_i) {
                    far = false;
                    break;
                }
            if (!far) continue;
            const Ball cand = Ball::at_point(p, r_i);
            bool dis = true;
            for (const auto& [idx, b2] : cfg.B2)
                if (!balls_disjoint(inst, cand, b2)) {
                    dis = false;
                    break;
                }
            if (!dis) continue;
            long long in_ball = 0;
            for (PointId q : P_i)
                if (inst.metric().dist(p, q) <= r_i + kContainmentSlack)
                    ++in_ball;
            const long long score = std::min<long long>(inst.capacity(p), in_ball);
            if (score > best_score) {
                best_score = score;
                best = p;
            }
        }
        if (best < 0) break;
        xs.push_back(best);
    }
    if (xs.empty()) return std::nullopt;

    const uint32_t kase = chooser.choose(3);
    Phase3Step out;
    out.cfg = cfg;
    if (kase == 0) {
        // The optimal center of index i sits within 4 r_i of some x_s: the
        // ball B(x_s, 5 r_i) is an approximate ball.
        const PointId x = xs[chooser.choose(static_cast<uint32_t>(xs.size()))];
        out.cfg.clear_replacements();
        if (chooser.choose(2) == 0) {
            out.cfg.I1.insert(i);
            out.cfg.B1[i] = Ball::at_point(x, 5.0 * r_i);
        } else {
            auto js = sorted_complement(k, out.cfg.I1);
            js.erase(std::remove(js.begin(), js.end(), i), js.end());
            if (js.empty()) return std::nullopt;
            const int j = pick(chooser, js);
            out.cfg.I1.insert(j);
            out.cfg.B1[j] = Ball::at_point(x, radius_of(profile, j));
        }
        out.cfg.used_centers.insert(x);
        out.restarted = true;
        return out;
    }
    if (kase == 1) {
        // Some bigger unrepresented ball intersects one of the far balls.
        std::vector<int> bigger;
        for (int ip = 0; ip < k; ++ip)
            if (!cfg.I1.count(ip) && radius_of(profile, ip) >= r_i)
                bigger.push_back(ip);
        if (bigger.empty()) return std::nullopt;
        const int ip = pick(chooser, bigger);
        const double r_ip = radius_of(profile, ip);
        const PointId x_s = xs[chooser.choose(static_cast<uint32_t>(xs.size()))];
        const PointId x = best_center_within(inst, cfg, x_s, r_i + r_ip);
        if (x < 0) return std::nullopt;
        out.cfg.clear_replacements();
        if (chooser.choose(2) == 0) {
            out.cfg.I1.insert(ip);
            out.cfg.B1[ip] = Ball::at_point(x, 2.0 * (r_i + r_ip) + r_ip);
        } else {
            auto js = sorted_complement(k, out.cfg.I1);
            js.erase(std::remove(js.begin(), js.end(), ip), js.end());
            if (js.empty()) return std::nullopt;
            const int j = pick(chooser, js);
            out.cfg.I1.insert(j);
            out.cfg.B1[j] = Ball::at_point(x, radius_of(profile, j));
        }
        out.cfg.used_centers.insert(x);
        out.restarted = true;
        return out;
    }
    // Replacement: one far ball is untouched by unrepresented optimal balls.
    const PointId x = xs[chooser.choose(static_cast<uint32_t>(xs.size()))];
    out.cfg.I2.insert(i);
    out.cfg.B2[i] = Ball::at_point(x, r_i);
    out.cfg.used_centers.insert(x);
    out.restarted = false;
    return out;
}

std::optional<Solution> assemble_and_check(const Instance& inst,
                                           const RadiusProfile& profile,
                                           const Configuration& cfg) {
    const int k = static_cast<int>(profile.radii.size());
    if (static_cast<int>(cfg.I1.size() + cfg.I2.size()) != k) return std::nullopt;

    std::vector<Ball> balls;
    double bound = 0.0;
    for (int i : cfg.I1) {
        balls.push_back(ext(cfg.B1.at(i), 10.0 * radius_of(profile, i)));
        bound += 15.0 * radius_of(profile, i);
    }
    for (int i : cfg.I2) {
        balls.push_back(cfg.B2.at(i));
        bound += radius_of(profile, i);
    }
    auto assignment = find_assignment(inst, balls);
    if (!assignment) return std::nullopt;

    Solution sol;
    sol.balls = std::move(balls);
    sol.assignment = std::move(*assignment);
    sol.cost = solution_cost(sol);
    if (sol.cost > bound + kContainmentSlack) return std::nullopt;
    if (!verify_solution(inst, sol).ok()) return std::nullopt;
    // Candidates keep their empty balls: the assembled cost is then bounded
    // below by the profile sum, which makes the branch-and-bound pruning
    // exact (the exhaustive search returns the true candidate minimum).
    return sol;
}

namespace {

double partial_cost(const RadiusProfile& profile, const Configuration& cfg) {
    double c = 0.0;
    for (const auto& [i, b] : cfg.B1) c += b.radius + 10.0 * radius_of(profile, i);
    for (const auto& [i, b] : cfg.B2) c += b.radius;
    return c;
}

struct TrialContext {
    const Instance& inst;
    const RadiusProfile& profile;
    double incumbent;
    bool validate;
    std::vector<std::string>* violations;
};

std::optional<Solution> run_trial(const TrialContext& ctx, Chooser& chooser) {
    const Instance& inst = ctx.inst;
    const RadiusProfile& profile = ctx.profile;
    const int k = static_cast<int>(profile.radii.size());
    Configuration cfg;

    auto note_violations = [&](const Configuration& c) {
        if (!ctx.validate) return;
        auto v = configuration_violations(inst, profile, c);
        ctx.violations->insert(ctx.violations->end(), v.begin(), v.end());
    };

    int iterations = 0;
    while (cfg.first_uncovered(inst) >= 0) {
        if (static_cast<int>(cfg.I1.size()) >= k || ++iterations > k)
            return std::nullopt;
        auto next = phase1_cover_step(inst, profile, cfg, chooser);
        if (!next) return std::nullopt;
        cfg = std::move(*next);
        note_violations(cfg);
        if (partial_cost(profile, cfg) >= ctx.incumbent - 1e-12) return std::nullopt;
    }

    int applications = 0;
    int restarts = 0;
    while (static_cast<int>(cfg.I1.size() + cfg.I2.size()) < k) {
        if (++applications > k * k + k) return std::nullopt;
        if (cfg.I2.empty() && chooser.choose(2) == 0) {
            auto next = phase2_merge_step(inst, profile, cfg, chooser);
            if (!next) return std::nullopt;
            cfg = std::move(*next);
        } else {
            auto next = phase3_replace_step(inst, profile, cfg, chooser);
            if (!next) return std::nullopt;
            if (next->restarted && ++restarts > k) return std::nullopt;
            cfg = std::move(next->cfg);
        }
        note_violations(cfg);
        if (partial_cost(profile, cfg) >= ctx.incumbent - 1e-12) return std::nullopt;
    }
    return assemble_and_check(inst, profile, cfg);
}

}  // namespace

SolveResult solve_nonuniform(const Instance& inst, const SolveOptions& opts) {
    if (!(opts.epsilon > 0.0) || opts.epsilon >= 1.0)
        throw std::invalid_argument("epsilon must be in (0, 1)");
    SolveResult res;
    if (inst.certified_infeasible()) {
        res.outcome = SolveResult::Outcome::infeasible;
        return res;
    }
    const int k = inst.k_eff();
    if (opts.exhaustive && k > opts.exhaustive_k_max) return res;

    const double eps_profile = opts.epsilon / 15.0;
    auto stream = ProfileStream::general(inst, eps_profile);
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::string> violations;

    uint64_t profile_idx = 0;
    bool out_of_budget = false;
    while (auto profile = stream.next()) {
        const uint64_t pidx = profile_idx++;
        double sigma = 0.0;
        for (double r : profile->radii) sigma += r;
        // Every assembled candidate costs at least the profile sum (each
        // index contributes r_i or more), so this skip is exact.
        if (sigma >= best - 1e-12) continue;

        TrialContext ctx{inst, *profile, best, opts.validate, &violations};
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
                consider(run_trial(ctx, chooser), chooser.trace());
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
                consider(run_trial(ctx, chooser), chooser.trace());
            }
        }
        if (out_of_budget) break;
    }

    if (opts.validate && !violations.empty())
        throw std::logic_error("configuration invariant violated: " + violations.front());
    res.outcome = res.solution ? SolveResult::Outcome::solved
                               : SolveResult::Outcome::budget_exhausted;
    return res;
}

}  // namespace capradii
