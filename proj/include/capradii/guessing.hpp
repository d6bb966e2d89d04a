#pragma once

#include <optional>
#include <random>
#include <vector>

#include "capradii/core.hpp"

namespace capradii {

// A guessed non-increasing vector (r_1,...,r_k) over-approximating the
// optimal radii. Every entry is an integer multiple of the granularity or
// equal to r_1. The streams below guarantee that for the true optimal radii
// some yielded profile dominates them entry-wise with total at most
// (1+epsilon) times the optimal sum (general metric; the Euclidean stream
// carries the analogous guarantee through the diameter pair of the largest
// ball).
struct RadiusProfile {
    std::vector<double> radii;
    double granularity = 0.0;
};

// Pull-based profile iterator. Enumeration order: descending anchor distance
// D, then descending lexicographic over the grid, so the largest plausible
// scales come first and incumbent pruning bites early. Duplicate-free for a
// fixed D.
class ProfileStream {
  public:
    // r_1 = D for every pairwise distance D; later entries range over
    // {j*eps*D/k : 0 <= j <= ceil(k/eps)} clamped to [0, D].
    static ProfileStream general(const Instance& inst, double epsilon);
    // Every entry ranges over {j*eps*D/k : 0 <= j <= ceil(2k/eps)} for each
    // pairwise distance D; the grid tops out at 2D because the largest
    // optimal ball's radius is at most twice the distance of its farthest
    // point pair.
    static ProfileStream euclidean(const Instance& inst, double epsilon);

    std::optional<RadiusProfile> next();

  private:
    ProfileStream() = default;
    void start_distance();
    bool advance_odometer();

    int k_ = 1;
    double epsilon_ = 0.5;
    bool euclid_ = false;
    std::vector<double> distances_;  // descending
    size_t dist_idx_ = 0;
    std::vector<double> grid_;   // ascending candidate values for current D
    std::vector<int> odometer_;  // non-increasing grid indices
    bool odometer_fresh_ = false;
    bool done_ = false;
};

// Uniform draw from the same space as ProfileStream::general: uniform anchor
// distance, then uniform grid values sorted non-increasing.
RadiusProfile sample_profile_general(const Instance& inst, double epsilon,
                                     std::mt19937_64& rng);

}  // namespace capradii
