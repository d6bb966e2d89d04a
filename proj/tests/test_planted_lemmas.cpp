#include <doctest.h>

#include <random>

#include "capradii/euclidean.hpp"
#include "capradii/meb.hpp"
#include "testutil.hpp"

using namespace capradii;

// Planted-trace checks for the sampling lemmas: all guesses forced correct
// on instances with known structure must deterministically produce the
// stated postconditions.

namespace {

// Heavy planted cluster: 6 points inside a radius-1 ball at the origin,
// 2 light points far away. U = 4, k = 2.
Instance heavy_cluster_instance(PointList* cluster_out = nullptr) {
    PointList pts{{0.0, 0.0}, {0.9, 0.0},  {0.0, 0.8}, {-0.7, 0.1},
                  {0.2, -0.9}, {0.5, 0.5}, {50.0, 0.0}, {50.0, 1.0}};
    if (cluster_out)
        cluster_out->assign(pts.begin(), pts.begin() + 6);
    return Instance::euclidean(2, 4, pts);
}

}  // namespace

TEST_CASE("forced coreset growth covers the planted ball minus U/2k points") {
    auto inst = heavy_cluster_instance();
    RadiusProfile profile;
    profile.radii = {1.0, 0.5};
    const double eps = 0.5;
    const double tau = 4.0 / (2.0 * 2.0);  // U / 2k = 1

    CoresetGrowthOptions gopts;
    gopts.pool = {0, 1, 2, 3, 4, 5};  // planted members only
    gopts.residual_threshold = tau;
    gopts.stop_guess = false;  // run to the threshold deterministically

    std::mt19937_64 rng(71);
    RandomChooser chooser(rng);
    auto S = grow_coreset_trial(inst, 0, profile, eps, chooser, gopts);

    const Ball reach = S.extended(eps, profile.radii[0]);
    int outside = 0;
    for (PointId p : gopts.pool)
        if (!inst.metric().contains(reach, p)) ++outside;
    CHECK(outside <= tau);
    const int cap = static_cast<int>(std::ceil(32.0 / (eps * eps))) + 1;
    CHECK(static_cast<int>(S.members.size()) <= cap);
    // Members really are planted points.
    for (PointId p : S.members) CHECK(p <= 5);
}

TEST_CASE("greedy completion covers P with guessed coreset growth") {
    // Mirror of the covering lemma: coresets for guessed-heavy indices plus
    // index-guessed additions for uncovered points until the union of the
    // extended MEBs covers everything.
    auto inst = heavy_cluster_instance();
    RadiusProfile profile;
    profile.radii = {1.0, 0.6};
    const double eps = 0.5;

    std::map<int, CoreSet> S;
    std::vector<int> I;
    CoresetGrowthOptions gopts;
    gopts.pool = {0, 1, 2, 3, 4, 5};
    gopts.residual_threshold = 1.0;
    gopts.stop_guess = false;
    std::mt19937_64 rng(73);
    RandomChooser chooser(rng);
    S[0] = grow_coreset_trial(inst, 0, profile, eps, chooser, gopts);
    I.push_back(0);

    int additions = 0;
    while (true) {
        PointId x = -1;
        for (PointId p = 0; p < inst.n() && x < 0; ++p) {
            bool covered = false;
            for (int i : I)
                if (inst.metric().contains(S[i].extended(eps, profile.radii[i]),
                                           p))
                    covered = true;
            if (!covered) x = p;
        }
        if (x < 0) break;
        // Correct guess: the far points belong to optimal index 1.
        const int i = 1;
        if (!S.count(i)) I.push_back(i);
        S[i].members.push_back(x);
        PointList pts;
        for (PointId p : S[i].members) pts.push_back(inst.metric().points()[p]);
        S[i].meb = meb_exact_small_d(pts);
        ++additions;
        REQUIRE(additions <= 32 * inst.k() * 4 + 8);
    }
    // Post: the union of extended MEBs covers P.
    for (PointId p = 0; p < inst.n(); ++p) {
        bool covered = false;
        for (int i : I)
            if (inst.metric().contains(S[i].extended(eps, profile.radii[i]), p))
                covered = true;
        CHECK(covered);
    }
}

TEST_CASE("a chain of intersecting balls fits in radius 2 rad(C)") {
    // Chain of three pairwise-consecutive intersecting balls: any member
    // point is within 2 rad(C) of any other, so one ball of radius
    // 2 rad(C) centered at any member point covers the component.
    PointList centers{{0.0, 0.0}, {1.8, 0.0}, {3.4, 0.0}};
    std::vector<double> radii{1.0, 1.0, 0.8};
    const double rad_c = radii[0] + radii[1] + radii[2];

    std::mt19937_64 rng(79);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    PointList member_points;
    for (int b = 0; b < 3; ++b)
        for (int t = 0; t < 30; ++t) {
            std::vector<double> p(2);
            do {
                p[0] = centers[b][0] + radii[b] * u(rng);
                p[1] = centers[b][1] + radii[b] * u(rng);
            } while (coord_dist(p, centers[b]) > radii[b]);
            member_points.push_back(p);
        }
    for (const auto& anchor : member_points)
        for (const auto& p : member_points)
            CHECK(coord_dist(anchor, p) <= 2.0 * rad_c + 1e-9);
}
