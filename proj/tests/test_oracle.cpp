#include <doctest.h>

#include <random>

#include "capradii/oracle.hpp"
#include "testutil.hpp"

using namespace capradii;

TEST_CASE("singleton instance costs zero") {
    auto inst = Instance::general(1, MetricBackend::from_matrix(1, {0.0}), {1});
    auto res = solve_exact_general(inst);
    REQUIRE(res.status == OracleStatus::optimal);
    CHECK(res.cost() == doctest::Approx(0.0));
    CHECK(verify_solution(inst, *res.solution).ok());
}

TEST_CASE("unit square with pair capacities: regression constant") {
    // Corners of the unit square as a general metric, k = 2, capacity 2
    // everywhere. Coverage alone would allow one radius-1 ball plus a
    // radius-0 ball, but the capacity forces two radius-1 balls: the oracle
    // enumerates to exactly 2 (frozen from its own self-enumeration).
    const double s2 = std::sqrt(2.0);
    std::vector<double> m{0, 1, 1, s2, 1, 0, s2, 1, 1, s2, 0, 1, s2, 1, 1, 0};
    auto inst = Instance::general(2, MetricBackend::from_matrix(4, m),
                                  {2, 2, 2, 2});
    auto res = solve_exact_general(inst);
    REQUIRE(res.status == OracleStatus::optimal);
    CHECK(res.cost() == doctest::Approx(2.0));
    CHECK(verify_solution(inst, *res.solution).ok());
}

TEST_CASE("k >= n with unit capacities costs zero") {
    std::mt19937_64 rng(51);
    auto pts = testutil::random_points(3, 3, rng);
    auto inst = testutil::general_from_points(5, pts, {1, 1, 1});
    auto res = solve_exact_general(inst);
    REQUIRE(res.status == OracleStatus::optimal);
    CHECK(res.cost() == doctest::Approx(0.0));
    CHECK(res.solution->balls.size() == 3);
}

TEST_CASE("oracle respects its budget and reports infeasibility") {
    std::mt19937_64 rng(53);
    auto big = testutil::random_general_instance(11, 2, rng);
    CHECK(solve_exact_general(big).status == OracleStatus::budget_exceeded);

    auto pts = testutil::random_points(4, 2, rng);
    auto infeasible = testutil::general_from_points(2, pts, {1, 1, 1, 1});
    CHECK(solve_exact_general(infeasible).status == OracleStatus::infeasible);
}

TEST_CASE("oracle solutions verify on random instances") {
    std::mt19937_64 rng(59);
    for (int t = 0; t < 40; ++t) {
        const int n = 2 + static_cast<int>(rng() % 6);
        const int k = 1 + static_cast<int>(rng() % 2);
        auto inst = testutil::random_general_instance(n, k, rng);
        auto res = solve_exact_general(inst);
        REQUIRE(res.status == OracleStatus::optimal);
        CHECK(verify_solution(inst, *res.solution).ok());
    }
}

TEST_CASE("oracle cost is invariant under point permutation") {
    std::mt19937_64 rng(61);
    for (int t = 0; t < 15; ++t) {
        const int n = 5;
        auto pts = testutil::random_points(n, 3, rng);
        std::vector<int> caps{1, 2, 3, 2, 1};
        auto inst = testutil::general_from_points(2, pts, caps);
        auto base = solve_exact_general(inst);
        REQUIRE(base.status == OracleStatus::optimal);

        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        PointList ppts(n);
        std::vector<int> pcaps(n);
        for (int p = 0; p < n; ++p) {
            ppts[perm[p]] = pts[p];
            pcaps[perm[p]] = caps[p];
        }
        auto pinst = testutil::general_from_points(2, ppts, pcaps);
        auto permuted = solve_exact_general(pinst);
        REQUIRE(permuted.status == OracleStatus::optimal);
        CHECK(permuted.cost() == doctest::Approx(base.cost()).epsilon(1e-9));
    }
}

TEST_CASE("euclidean oracle: coincident and separated pairs") {
    auto both = Instance::euclidean(1, 2, {{1.0, 1.0}, {1.0, 1.0}});
    auto res = solve_exact_euclidean(both);
    REQUIRE(res.status == OracleStatus::optimal);
    CHECK(res.cost() == doctest::Approx(0.0));

    auto pair = Instance::euclidean(1, 2, {{0.0, 0.0}, {2.0, 0.0}});
    res = solve_exact_euclidean(pair);
    REQUIRE(res.status == OracleStatus::optimal);
    CHECK(res.cost() == doctest::Approx(1.0));  // midpoint MEB
    CHECK(res.solution->balls[0].center_coords[0] == doctest::Approx(1.0));
}

TEST_CASE("euclidean oracle equals the straight labeling enumerator") {
    std::mt19937_64 rng(67);
    for (int t = 0; t < 25; ++t) {
        auto pts = testutil::random_points(5, 2, rng);
        auto inst = Instance::euclidean(2, 3, pts);
        auto res = solve_exact_euclidean(inst);
        REQUIRE(res.status == OracleStatus::optimal);
        const double straight = testutil::euclid_min_cost_by_labelings(inst);
        CHECK(res.cost() == doctest::Approx(straight).epsilon(1e-9));
        CHECK(verify_solution(inst, *res.solution).ok());
    }
}

TEST_CASE("uncapacitated bound floors the capacitated cost") {
    std::mt19937_64 rng(71);
    for (int t = 0; t < 25; ++t) {
        const int n = 3 + static_cast<int>(rng() % 5);
        auto inst = testutil::random_general_instance(n, 2, rng);
        auto capped = solve_exact_general(inst);
        auto bound = lower_bound_uncapacitated(inst);
        REQUIRE(capped.status == OracleStatus::optimal);
        REQUIRE(bound.status == OracleStatus::optimal);
        CHECK(capped.cost() >= bound.value - 1e-9);
    }
    // With capacities already at n the bound is tight.
    auto pts = testutil::random_points(5, 2, rng);
    auto relaxed = testutil::general_from_points(2, pts, {5, 5, 5, 5, 5});
    CHECK(solve_exact_general(relaxed).cost() ==
          doctest::Approx(lower_bound_uncapacitated(relaxed).value));
}

TEST_CASE("uncapacitated bound on three collinear points") {
    // Points at 0, 1, 3 with k = 2: an independent mini-enumeration over
    // center subsets and candidate radii gives the expected optimum.
    auto inst = testutil::general_from_points(2, {{0.0}, {1.0}, {3.0}},
                                              {3, 3, 3});
    double expected = std::numeric_limits<double>::infinity();
    const int n = 3;
    for (int c1 = 0; c1 < n; ++c1)
        for (int c2 = c1; c2 < n; ++c2)
            for (int p1 = 0; p1 < n; ++p1)
                for (int p2 = 0; p2 < n; ++p2) {
                    const double r1 = inst.metric().dist(c1, p1);
                    const double r2 = inst.metric().dist(c2, p2);
                    bool covers = true;
                    for (int p = 0; p < n; ++p)
                        if (inst.metric().dist(c1, p) > r1 + 1e-12 &&
                            inst.metric().dist(c2, p) > r2 + 1e-12)
                            covers = false;
                    if (covers) expected = std::min(expected, r1 + r2);
                }
    auto bound = lower_bound_uncapacitated(inst);
    REQUIRE(bound.status == OracleStatus::optimal);
    CHECK(bound.value == doctest::Approx(expected));
    CHECK(expected == doctest::Approx(1.0));
}

TEST_CASE("general oracle over point centers dominates the euclidean oracle") {
    std::mt19937_64 rng(73);
    for (int t = 0; t < 15; ++t) {
        auto pts = testutil::random_points(6, 2, rng);
        auto einst = Instance::euclidean(2, 3, pts);
        auto ginst = testutil::general_from_points(2, pts, {3, 3, 3, 3, 3, 3});
        auto eres = solve_exact_euclidean(einst);
        auto gres = solve_exact_general(ginst);
        REQUIRE(eres.status == OracleStatus::optimal);
        REQUIRE(gres.status == OracleStatus::optimal);
        // Free centers are a superset of the input points.
        CHECK(gres.cost() >= eres.cost() - 1e-9);
    }
}
