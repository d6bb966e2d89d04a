#include <doctest.h>

#include <limits>
#include <random>

#include "capradii/nonuniform.hpp"
#include "capradii/oracle.hpp"
#include "testutil.hpp"

using namespace capradii;

namespace {

GuessTrace make_trace(std::initializer_list<uint32_t> choices) {
    GuessTrace t;
    for (uint32_t c : choices) t.steps.push_back({c, 0});
    return t;
}

RadiusProfile profile_of(std::initializer_list<double> radii) {
    RadiusProfile p;
    p.radii = radii;
    p.granularity = 0.0;
    return p;
}

}  // namespace

TEST_CASE("phase1 on a single point adds the zero ball") {
    auto inst = Instance::general(1, MetricBackend::from_matrix(1, {0.0}), {1});
    auto profile = profile_of({0.0});
    Configuration cfg;
    ReplayChooser chooser(make_trace({0, 0}));  // index 0, plain case
    auto next = phase1_cover_step(inst, profile, cfg, chooser);
    REQUIRE(next.has_value());
    CHECK(next->I1 == std::set<int>{0});
    CHECK(next->B1.at(0).center_id == 0);
    CHECK(next->B1.at(0).radius == 0.0);
    CHECK(configuration_violations(inst, profile, *next).empty());
}

TEST_CASE("phase1 takes the max-capacity center in range") {
    // All points within r_0 of each other; the greedy rule must pick the
    // highest-capacity point (smallest id on ties).
    auto inst = testutil::general_from_points(
        1, {{0.0}, {0.1}, {0.2}, {0.3}}, {1, 5, 3, 5});
    auto profile = profile_of({1.0});
    Configuration cfg;
    ReplayChooser chooser(make_trace({0, 0}));
    auto next = phase1_cover_step(inst, profile, cfg, chooser);
    REQUIRE(next.has_value());
    CHECK(next->B1.at(0).center_id == 1);
    CHECK(next->B1.at(0).radius == doctest::Approx(3.0));
}

TEST_CASE("phase1 fails when no center is within range") {
    auto inst = testutil::general_from_points(2, {{0.0}, {10.0}}, {2, 2});
    auto profile = profile_of({0.5, 0.0});
    Configuration cfg;
    cfg.I1.insert(0);
    cfg.B1[0] = Ball::at_point(0, 0.1);
    cfg.used_centers.insert(0);
    cfg.used_centers.insert(1);  // nothing left near the uncovered point
    ReplayChooser chooser(make_trace({0, 0}));
    CHECK_FALSE(phase1_cover_step(inst, profile, cfg, chooser).has_value());
}

TEST_CASE("phase1 planted replay covers a 2-cluster instance within 3(r0+r1)") {
    // Clusters of diameter <= 1 and <= 0.8 around 0 and 20.
    PointList pts{{0.0}, {0.5}, {1.0}, {20.0}, {20.4}, {20.8}};
    auto inst = testutil::general_from_points(2, pts, {3, 3, 3, 3, 3, 3});
    auto profile = profile_of({1.0, 0.8});
    bool hit = false;
    for (uint64_t trial = 0; trial < 200 && !hit; ++trial) {
        auto rng = rng_for(4242, trial);
        RandomChooser chooser(rng);
        Configuration cfg;
        bool ok = true;
        for (int it = 0; it < inst.k() && ok; ++it) {
            if (cfg.first_uncovered(inst) < 0) break;
            auto next = phase1_cover_step(inst, profile, cfg, chooser);
            if (!next) {
                ok = false;
                break;
            }
            cfg = *next;
            CHECK(configuration_violations(inst, profile, cfg).empty());
        }
        if (!ok || cfg.first_uncovered(inst) >= 0) continue;
        double cost = 0.0;
        for (const auto& [i, b] : cfg.B1) cost += b.radius;
        if (cost <= 3.0 * (1.0 + 0.8) + 1e-9) hit = true;
    }
    CHECK(hit);
}

TEST_CASE("phase2 second branch adds exactly radius 2(5 r_i + r_j) + r_j") {
    // Small covered cluster at 0, big planted cluster within 5 of p2.
    PointList pts{{0.0}, {0.4}, {1.4}, {5.0}, {6.0}};
    auto inst = testutil::general_from_points(2, pts, {3, 3, 9, 3, 3});
    auto profile = profile_of({5.0, 0.5});
    Configuration cfg;
    cfg.I1.insert(1);
    cfg.B1[1] = Ball::at_point(0, 1.5);
    cfg.used_centers.insert(0);

    // Decisions: i in I1 -> 1, j in {0} -> 0, case -> plain.
    ReplayChooser chooser(make_trace({0, 0, 1}));
    auto next = phase2_merge_step(inst, profile, cfg, chooser);
    REQUIRE(next.has_value());
    REQUIRE(next->I1.count(0) == 1);
    const Ball& added = next->B1.at(0);
    // Max-capacity center inside B(p0, 5*0.5 + 5) is p2.
    CHECK(added.center_id == 2);
    CHECK(added.radius == doctest::Approx(2.0 * (5.0 * 0.5 + 5.0) + 5.0));
    // The added ball swallows the planted big cluster.
    for (PointId p : {2, 3, 4}) CHECK(inst.metric().contains(added, p));
    CHECK(configuration_violations(inst, profile, *next).empty());
}

TEST_CASE("phase2 radius bound is tight at the r_j = 5 r_i boundary") {
    PointList pts{{0.0}, {0.2}, {2.0}};
    auto inst = testutil::general_from_points(2, pts, {2, 2, 2});
    auto profile = profile_of({2.5, 0.5});  // r_0 = 5 r_1
    Configuration cfg;
    cfg.I1.insert(1);
    cfg.B1[1] = Ball::at_point(0, 1.0);
    cfg.used_centers.insert(0);
    ReplayChooser chooser(make_trace({0, 0, 1}));
    auto next = phase2_merge_step(inst, profile, cfg, chooser);
    REQUIRE(next.has_value());
    // 2 (5 r_i + r_j) + r_j = 5 r_j exactly when r_j = 5 r_i.
    CHECK(next->B1.at(0).radius == doctest::Approx(5.0 * 2.5));
}

TEST_CASE("phase3 replacement lands inside the extended trap") {
    // Big cluster {0, 0.8, 1.6} handled by B1[0]; planted small cluster
    // {3.0, 3.2} hides inside ext(B1[0], 10 r_0).
    PointList pts{{0.0}, {0.8}, {1.6}, {3.0}, {3.2}};
    auto inst = testutil::general_from_points(2, pts, {4, 4, 4, 2, 4});
    auto profile = profile_of({2.0, 0.3});
    Configuration cfg;
    cfg.I1.insert(0);
    cfg.B1[0] = Ball::at_point(0, 6.0);
    cfg.used_centers.insert(0);

    // Decisions: i -> 1, T = {0}, case replacement, s -> first far point.
    ReplayChooser chooser(make_trace({0, 0, 2, 0}));
    auto step = phase3_replace_step(inst, profile, cfg, chooser);
    REQUIRE(step.has_value());
    CHECK_FALSE(step->restarted);
    REQUIRE(step->cfg.I2 == std::set<int>{1});
    const Ball& added = step->cfg.B2.at(1);
    // Highest min(eta, |B cap P_i|) score sits on the planted pair.
    CHECK(added.center_id == 3);
    CHECK(added.radius == doctest::Approx(0.3));
    // Criterion: the replacement ball lies inside every ext(B1[j], 10 r_j)
    // of its T_i and is disjoint from existing B2 balls (none yet).
    const Ball trap = ext(cfg.B1.at(0), 10.0 * profile.radii[0]);
    CHECK(inst.metric().dist(trap.center_id, added.center_id) + added.radius <=
          trap.radius + 1e-9);
    CHECK(configuration_violations(inst, profile, step->cfg).empty());

    // The far-point sequence never exceeds k + 1 entries: the s-decision
    // recorded in the trace has at most k + 1 options.
    const auto& steps = chooser.trace().steps;
    CHECK(steps[3].options <= static_cast<uint32_t>(inst.k() + 1));
}

TEST_CASE("phase3 restart branch clears the replacements") {
    PointList pts{{0.0}, {0.8}, {1.6}, {3.0}, {3.2}};
    auto inst = testutil::general_from_points(2, pts, {4, 4, 4, 2, 4});
    auto profile = profile_of({2.0, 0.3});
    Configuration cfg;
    cfg.I1.insert(0);
    cfg.B1[0] = Ball::at_point(0, 6.0);
    cfg.used_centers.insert(0);

    // case 0 (approximate ball at x_s), sub-case plain.
    ReplayChooser chooser(make_trace({0, 0, 0, 0, 0}));
    auto step = phase3_replace_step(inst, profile, cfg, chooser);
    REQUIRE(step.has_value());
    CHECK(step->restarted);
    CHECK(step->cfg.I2.empty());
    CHECK(step->cfg.B2.empty());
    CHECK(step->cfg.I1.count(1) == 1);
    CHECK(step->cfg.B1.at(1).radius == doctest::Approx(5.0 * 0.3));
}

TEST_CASE("assemble extends approximate balls to 15 r and checks the flow") {
    auto inst = Instance::general(1, MetricBackend::from_matrix(1, {0.0}), {1});
    auto profile = profile_of({0.2});
    Configuration cfg;
    cfg.I1.insert(0);
    cfg.B1[0] = Ball::at_point(0, 5.0 * 0.2);
    cfg.used_centers.insert(0);
    auto sol = assemble_and_check(inst, profile, cfg);
    REQUIRE(sol.has_value());
    CHECK(sol->balls[0].radius == doctest::Approx(15.0 * 0.2));
    CHECK(sol->cost == doctest::Approx(3.0));
    CHECK(verify_solution(inst, *sol).ok());
}

TEST_CASE("assemble on coincident points with the zero profile costs zero") {
    auto inst = Instance::general(
        1, MetricBackend::from_matrix(3, std::vector<double>(9, 0.0)),
        {3, 3, 3});
    auto profile = profile_of({0.0});
    Configuration cfg;
    ReplayChooser chooser(make_trace({0, 0}));
    auto next = phase1_cover_step(inst, profile, cfg, chooser);
    REQUIRE(next.has_value());
    auto sol = assemble_and_check(inst, profile, *next);
    REQUIRE(sol.has_value());
    CHECK(sol->cost == doctest::Approx(0.0));
}

TEST_CASE("assemble refuses incomplete configurations") {
    auto inst = testutil::general_from_points(2, {{0.0}, {5.0}}, {2, 2});
    auto profile = profile_of({1.0, 1.0});
    Configuration cfg;
    cfg.I1.insert(0);
    cfg.B1[0] = Ball::at_point(0, 1.0);
    cfg.used_centers.insert(0);
    CHECK_FALSE(assemble_and_check(inst, profile, cfg).has_value());
}

TEST_CASE("solve_nonuniform: singletons everywhere cost zero") {
    std::mt19937_64 rng(301);
    auto pts = testutil::random_points(5, 2, rng);
    auto inst = testutil::general_from_points(5, pts, {1, 1, 1, 1, 1});
    SolveOptions opts;
    opts.epsilon = 0.5;
    opts.exhaustive = true;
    opts.exhaustive_k_max = 5;
    opts.validate = true;
    auto res = solve_nonuniform(inst, opts);
    REQUIRE(res.outcome == SolveResult::Outcome::solved);
    CHECK(res.solution->cost == doctest::Approx(0.0));
    CHECK(verify_solution(inst, *res.solution).ok());
}

TEST_CASE("solve_nonuniform flags certified infeasibility") {
    auto inst = testutil::general_from_points(1, {{0.0}, {1.0}, {2.0}},
                                              {1, 1, 1});
    SolveOptions opts;
    auto res = solve_nonuniform(inst, opts);
    CHECK(res.outcome == SolveResult::Outcome::infeasible);
}

TEST_CASE("solve_nonuniform exhaustive stays within 15.5x of the oracle") {
    std::mt19937_64 rng(307);
    for (int t = 0; t < 12; ++t) {
        const int n = 4 + static_cast<int>(rng() % 3);
        const int k = 1 + static_cast<int>(rng() % 2);
        auto inst = testutil::random_general_instance(n, k, rng);
        auto oracle = solve_exact_general(inst);
        REQUIRE(oracle.status == OracleStatus::optimal);
        SolveOptions opts;
        opts.epsilon = 0.5;
        opts.exhaustive = true;
        opts.validate = true;
        auto res = solve_nonuniform(inst, opts);
        REQUIRE(res.outcome == SolveResult::Outcome::solved);
        CHECK(verify_solution(inst, *res.solution).ok());
        CHECK(res.solution->cost <= 15.5 * oracle.cost() + 1e-9);
    }
}

TEST_CASE("solve_nonuniform is deterministic under a fixed seed") {
    std::mt19937_64 rng(311);
    auto inst = testutil::random_general_instance(6, 2, rng);
    SolveOptions opts;
    opts.epsilon = 0.5;
    opts.trials = 16;
    opts.seed = 99;
    auto a = solve_nonuniform(inst, opts);
    auto b = solve_nonuniform(inst, opts);
    REQUIRE(a.outcome == b.outcome);
    if (a.solution) {
        CHECK(a.solution->cost == b.solution->cost);
        REQUIRE(a.solution->balls.size() == b.solution->balls.size());
        for (size_t i = 0; i < a.solution->balls.size(); ++i) {
            CHECK(a.solution->balls[i].center_id ==
                  b.solution->balls[i].center_id);
            CHECK(a.solution->balls[i].radius == b.solution->balls[i].radius);
        }
    }
}

TEST_CASE("exhaustive cost never increases with the trial budget") {
    std::mt19937_64 rng(313);
    auto inst = testutil::random_general_instance(6, 2, rng);
    SolveOptions opts;
    opts.epsilon = 0.5;
    opts.exhaustive = true;
    double prev = std::numeric_limits<double>::infinity();
    for (uint64_t budget : {200ull, 2000ull, 0ull}) {
        opts.max_trials = budget;
        auto res = solve_nonuniform(inst, opts);
        if (!res.solution) continue;
        CHECK(res.solution->cost <= prev + 1e-12);
        prev = res.solution->cost;
    }
    CHECK(std::isfinite(prev));
}

TEST_CASE("exhaustive cost is invariant under point relabeling") {
    std::mt19937_64 rng(317);
    auto pts = testutil::random_points(5, 2, rng);
    std::vector<int> caps{2, 3, 1, 2, 4};
    auto inst = testutil::general_from_points(2, pts, caps);
    SolveOptions opts;
    opts.epsilon = 0.5;
    opts.exhaustive = true;
    auto base = solve_nonuniform(inst, opts);
    REQUIRE(base.outcome == SolveResult::Outcome::solved);

    std::vector<int> perm{3, 0, 4, 2, 1};
    PointList ppts(5);
    std::vector<int> pcaps(5);
    for (int p = 0; p < 5; ++p) {
        ppts[perm[p]] = pts[p];
        pcaps[perm[p]] = caps[p];
    }
    auto pinst = testutil::general_from_points(2, ppts, pcaps);
    auto permuted = solve_nonuniform(pinst, opts);
    REQUIRE(permuted.outcome == SolveResult::Outcome::solved);
    CHECK(permuted.solution->cost ==
          doctest::Approx(base.solution->cost).epsilon(1e-9));
}
