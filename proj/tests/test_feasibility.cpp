#include <doctest.h>

#include <random>

#include "capradii/feasibility.hpp"
#include "testutil.hpp"

using namespace capradii;

TEST_CASE("two points, one ball: capacity decides") {
    auto inst2 = Instance::general(
        1, MetricBackend::from_matrix(2, {0.0, 1.0, 1.0, 0.0}), {2, 2});
    std::vector<Ball> balls{Ball::at_point(0, 1.0)};
    CHECK(find_assignment(inst2, balls).has_value());

    auto inst1 = Instance::general(
        1, MetricBackend::from_matrix(2, {0.0, 1.0, 1.0, 0.0}), {1, 1});
    CHECK_FALSE(find_assignment(inst1, balls).has_value());
}

TEST_CASE("returned assignments verify") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.2);
    for (int t = 0; t < 100; ++t) {
        const int n = 3 + static_cast<int>(rng() % 6);
        const int nb = 1 + static_cast<int>(rng() % 3);
        auto inst = testutil::random_general_instance(n, nb, rng);
        std::vector<Ball> balls;
        for (int b = 0; b < nb; ++b)
            balls.push_back(Ball::at_point(b, u(rng)));
        auto assignment = find_assignment(inst, balls);
        if (!assignment) continue;
        Solution sol;
        sol.balls = balls;
        sol.assignment = *assignment;
        sol.cost = solution_cost(sol);
        CHECK(verify_solution(inst, sol).ok());
    }
}

TEST_CASE("flow answer equals exhaustive assignment search") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int feasible = 0;
    for (int t = 0; t < 500; ++t) {
        const int n = 2 + static_cast<int>(rng() % 7);  // n <= 8
        const int nb = 1 + static_cast<int>(rng() % 3);  // <= 3 balls
        auto inst = testutil::random_general_instance(n, nb, rng);
        std::vector<Ball> balls;
        for (int b = 0; b < nb; ++b) {
            const PointId c = static_cast<PointId>(rng() % n);
            balls.push_back(Ball::at_point(c, u(rng)));
        }
        // Distinct centers (general-metric precondition); nudge collisions.
        bool distinct = true;
        for (size_t a = 0; a < balls.size(); ++a)
            for (size_t b = a + 1; b < balls.size(); ++b)
                if (balls[a].center_id == balls[b].center_id) distinct = false;
        if (!distinct) continue;

        auto caps = testutil::default_caps(inst, balls);
        auto flow = find_assignment(inst, balls);
        auto brute = testutil::brute_force_assignment(inst, balls, caps);
        CHECK(flow.has_value() == brute.has_value());
        if (flow) ++feasible;
    }
    CHECK(feasible > 20);  // the suite exercises both outcomes
}

TEST_CASE("feasibility is monotone in radius and capacity") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 0.8);
    for (int t = 0; t < 200; ++t) {
        const int n = 3 + static_cast<int>(rng() % 5);
        auto inst = testutil::random_general_instance(n, 2, rng);
        std::vector<Ball> balls{Ball::at_point(0, u(rng)),
                                Ball::at_point(1, u(rng))};
        auto caps = testutil::default_caps(inst, balls);
        if (!find_assignment_with_capacities(inst, balls, caps)) continue;
        // Enlarging a radius or a capacity keeps it feasible.
        auto bigger = balls;
        bigger[t % 2].radius += u(rng);
        CHECK(find_assignment_with_capacities(inst, bigger, caps).has_value());
        auto caps_up = caps;
        caps_up[t % 2] += 1 + static_cast<long long>(rng() % 3);
        CHECK(find_assignment_with_capacities(inst, balls, caps_up).has_value());
    }
}

TEST_CASE("assignments are integral and deterministic") {
    std::mt19937_64 rng(37);
    auto inst = testutil::random_general_instance(8, 3, rng);
    std::vector<Ball> balls{Ball::at_point(0, 0.9), Ball::at_point(3, 0.8),
                            Ball::at_point(5, 0.7)};
    auto a1 = find_assignment(inst, balls);
    auto a2 = find_assignment(inst, balls);
    REQUIRE(a1.has_value() == a2.has_value());
    if (a1) {
        CHECK(*a1 == *a2);  // fixed arc order -> reproducible runs
        for (int b : *a1) CHECK(b >= 0);
    }
}

TEST_CASE("capacity scale 1 reduces to find_assignment") {
    std::mt19937_64 rng(41);
    auto pts = testutil::random_points(6, 2, rng);
    auto inst = Instance::euclidean(2, 2, pts);  // U = 2, tight
    std::vector<Ball> balls{Ball::at_coords(pts[0], 0.7),
                            Ball::at_coords(pts[3], 0.7)};
    auto plain = find_assignment(inst, balls);
    auto scaled = find_assignment_with_capacity_scale(inst, balls, 1.0);
    CHECK(plain.has_value() == scaled.has_value());
}

TEST_CASE("large scale always feasible once balls cover everything") {
    std::mt19937_64 rng(43);
    auto pts = testutil::random_points(6, 2, rng);
    auto inst = Instance::euclidean(3, 2, pts);
    std::vector<Ball> balls{Ball::at_coords(pts[0], 10.0)};
    CHECK_FALSE(find_assignment(inst, balls).has_value());  // U = 2 < 6
    CHECK(find_assignment_with_capacity_scale(inst, balls, 3.0).has_value());
}

TEST_CASE("scaled feasibility agrees with brute force") {
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> u(0.1, 0.9);
    for (int t = 0; t < 100; ++t) {
        auto pts = testutil::random_points(6, 2, rng);
        auto inst = Instance::euclidean(3, 2, pts);  // n=6, U=2
        std::vector<Ball> balls{Ball::at_coords(pts[0], u(rng)),
                                Ball::at_coords(pts[4], u(rng))};
        const double scale = 1.5;
        const long long cap = static_cast<long long>(scale * 2);
        auto flow = find_assignment_with_capacity_scale(inst, balls, scale);
        auto brute = testutil::brute_force_assignment(
            inst, balls, std::vector<long long>(balls.size(), cap));
        CHECK(flow.has_value() == brute.has_value());
    }
}
