#include <doctest.h>

#include <random>

#include "capradii/euclidean.hpp"
#include "capradii/generators.hpp"
#include "capradii/oracle.hpp"
#include "testutil.hpp"

using namespace capradii;

namespace {

Generated planted_planar(int n, int k, uint64_t seed, double separation = 6.0) {
    GeneratorSpec spec;
    spec.kind = GeneratorSpec::Kind::planted_euclidean;
    spec.n = n;
    spec.k = k;
    spec.d = 2;
    spec.separation = separation;
    spec.seed = seed;
    return generate(spec);
}

}  // namespace

TEST_CASE("coreset growth on coincident points is a zero singleton") {
    auto inst = Instance::euclidean(1, 4, {{1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}});
    RadiusProfile profile;
    profile.radii = {1.0};
    std::mt19937_64 rng(3);
    auto S = grow_coreset_trial(inst, 0, profile, 0.5, rng);
    CHECK(S.members.size() == 1);
    CHECK(S.meb.radius == doctest::Approx(0.0));
}

TEST_CASE("solve_euclid_2approx: one cluster, one ball") {
    std::mt19937_64 rng(501);
    PointList pts;
    for (int i = 0; i < 6; ++i)
        pts.push_back({0.2 * i, 0.1 * (i % 2)});
    auto inst = Instance::euclidean(1, 6, pts);
    auto oracle = solve_exact_euclidean(inst);
    REQUIRE(oracle.status == OracleStatus::optimal);
    SolveOptions opts;
    opts.epsilon = 0.5;
    opts.trials = 12;
    auto res = solve_euclid_2approx(inst, opts);
    REQUIRE(res.outcome == SolveResult::Outcome::solved);
    CHECK(res.solution->balls.size() == 1);
    CHECK(res.solution->cost <= 3.0 * oracle.cost() + 1e-9);
    CHECK(verify_solution(inst, *res.solution).ok());
}

TEST_CASE("solve_euclid_2approx: two far planted clusters") {
    for (uint64_t seed : {1ull, 2ull, 3ull}) {
        auto gen = planted_planar(8, 2, seed);
        auto oracle = solve_exact_euclidean(gen.instance);
        REQUIRE(oracle.status == OracleStatus::optimal);
        SolveOptions opts;
        opts.epsilon = 0.5;
        opts.trials = 16;
        opts.seed = seed;
        auto res = solve_euclid_2approx(gen.instance, opts);
        REQUIRE(res.outcome == SolveResult::Outcome::solved);
        CHECK(verify_solution(gen.instance, *res.solution).ok());
        CHECK(res.solution->cost <= 3.0 * oracle.cost() + 1e-9);
    }
}

TEST_CASE("solve_euclid_2approx is deterministic under a fixed seed") {
    auto gen = planted_planar(7, 2, 9);
    SolveOptions opts;
    opts.epsilon = 0.5;
    opts.trials = 8;
    opts.seed = 33;
    auto a = solve_euclid_2approx(gen.instance, opts);
    auto b = solve_euclid_2approx(gen.instance, opts);
    REQUIRE(a.outcome == b.outcome);
    if (a.solution) CHECK(a.solution->cost == b.solution->cost);
}

TEST_CASE("ptas: two far singletons admit a zero-cost solution") {
    auto inst = Instance::euclidean(2, 1, {{0.0, 0.0}, {10.0, 0.0}});
    SolveOptions opts;
    opts.epsilon = 0.5;
    auto res = solve_euclid_ptas(inst, opts);
    REQUIRE(res.outcome == SolveResult::Outcome::solved);
    CHECK(res.solution->cost <= 1e-12);
    CHECK(verify_solution(inst, *res.solution).ok());
}

TEST_CASE("ptas stays within 1.5x of the oracle on planted instances") {
    for (uint64_t seed : {11ull, 12ull, 13ull, 14ull}) {
        auto gen = planted_planar(8, 2, seed);
        auto oracle = solve_exact_euclidean(gen.instance);
        REQUIRE(oracle.status == OracleStatus::optimal);
        SolveOptions opts;
        opts.epsilon = 0.5;
        auto res = solve_euclid_ptas(gen.instance, opts);
        REQUIRE(res.outcome == SolveResult::Outcome::solved);
        CHECK(verify_solution(gen.instance, *res.solution).ok());
        CHECK(res.solution->cost <= 1.5 * oracle.cost() + 1e-9);
    }
}

TEST_CASE("ptas grid covers its box at the promised resolution") {
    const int k = 2, d = 2;
    const double r1 = 1.3;
    const double eps_grid = 0.5 / 3.0;
    Ball covering = Ball::at_coords({0.7, -0.3}, 4.0);
    auto cells = ptas_grid_cells(covering, r1, k, d, eps_grid);

    // Structural count: per-axis cells are ceil(2 L / h) with
    // L = rad + r1 and h = 2 eps r1 / (k sqrt(d)).
    const double L = covering.radius + r1;
    const double h = 2.0 * eps_grid * r1 / (k * std::sqrt(2.0));
    const size_t per_axis = static_cast<size_t>(std::ceil(2.0 * L / h));
    CHECK(cells.size() == per_axis * per_axis);

    // Covering property: random points of ext(covering, r1) sit within
    // eps r1 / k of some cell center.
    std::mt19937_64 rng(601);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 300; ++t) {
        std::vector<double> p(d);
        do {
            for (int a = 0; a < d; ++a)
                p[a] = covering.center_coords[a] + L * u(rng);
        } while (coord_dist(p, covering.center_coords) > L);
        double best = 1e100;
        for (const auto& c : cells) best = std::min(best, coord_dist(p, c));
        CHECK(best <= eps_grid * r1 / k + 1e-9);
    }
}

TEST_CASE("euclidean bi-criteria: loads and cost on planted instances") {
    for (uint64_t seed : {21ull, 22ull, 23ull}) {
        auto gen = planted_planar(8, 2, seed);
        const Instance& inst = gen.instance;
        auto oracle = solve_exact_euclidean(inst);
        REQUIRE(oracle.status == OracleStatus::optimal);
        SolveOptions opts;
        opts.epsilon = 0.5;
        opts.trials = 16;
        opts.seed = seed;
        auto res = solve_euclid_bicriteria(inst, opts);
        REQUIRE(res.outcome == SolveResult::Outcome::solved);
        CHECK(verify_solution(inst, *res.solution, 1.5).ok());
        CHECK(res.solution->cost <= 2.0 * oracle.cost() + 1e-9);
        std::vector<int> load(res.solution->balls.size(), 0);
        for (int b : res.solution->assignment) ++load[b];
        const int cap = static_cast<int>(1.5 * (*inst.uniform_capacity()));
        for (int l : load) CHECK(l <= cap);
    }
}

TEST_CASE("large capacity slack reduces bi-criteria to plain covering") {
    // With eps-scaled capacity at least n, any covering candidate passes.
    PointList pts;
    for (int i = 0; i < 5; ++i) pts.push_back({0.3 * i, 0.0});
    auto inst = Instance::euclidean(1, 5, pts);
    SolveOptions opts;
    opts.epsilon = 0.5;
    opts.trials = 8;
    auto res = solve_euclid_bicriteria(inst, opts);
    REQUIRE(res.outcome == SolveResult::Outcome::solved);
    CHECK(verify_solution(inst, *res.solution, 1.5).ok());
}
