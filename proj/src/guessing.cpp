#include "capradii/guessing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace capradii {

namespace {

void check_eps(double epsilon) {
    if (!(epsilon > 0.0) || epsilon > 1.0)
        throw std::invalid_argument("epsilon must be in (0, 1]");
}

// Grid {j*step : j = 0..levels} with values above cap replaced by cap itself,
// deduplicated. Keeps the candidate count at levels+1 while making the cap
// representable.
std::vector<double> build_grid(double step, int levels, double cap) {
    std::vector<double> g;
    for (int j = 0; j <= levels; ++j) {
        double v = step * j;
        if (v >= cap) {
            g.push_back(cap);
            break;
        }
        g.push_back(v);
    }
    if (g.empty() || g.back() < cap) g.push_back(cap);
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
}

}  // namespace

ProfileStream ProfileStream::general(const Instance& inst, double epsilon) {
    check_eps(epsilon);
    ProfileStream s;
    s.k_ = inst.k_eff();
    s.epsilon_ = epsilon;
    s.euclid_ = false;
    s.distances_ = inst.metric().pairwise_distance_set();
    std::reverse(s.distances_.begin(), s.distances_.end());
    s.start_distance();
    return s;
}

ProfileStream ProfileStream::euclidean(const Instance& inst, double epsilon) {
    check_eps(epsilon);
    if (!inst.euclidean())
        throw std::invalid_argument("euclidean profile stream needs a euclidean instance");
    ProfileStream s;
    s.k_ = inst.k_eff();
    s.epsilon_ = epsilon;
    s.euclid_ = true;
    s.distances_ = inst.metric().pairwise_distance_set();
    std::reverse(s.distances_.begin(), s.distances_.end());
    s.start_distance();
    return s;
}

void ProfileStream::start_distance() {
    if (dist_idx_ >= distances_.size()) {
        done_ = true;
        return;
    }
    const double D = distances_[dist_idx_];
    const int free_slots = euclid_ ? k_ : k_ - 1;
    if (D == 0.0) {
        grid_ = {0.0};
    } else if (euclid_) {
        const int levels = static_cast<int>(std::ceil(2.0 * k_ / epsilon_));
        grid_ = build_grid(epsilon_ * D / k_, levels, 2.0 * D);
    } else {
        const int levels = static_cast<int>(std::ceil(k_ / epsilon_));
        grid_ = build_grid(epsilon_ * D / k_, levels, D);
    }
    odometer_.assign(free_slots, static_cast<int>(grid_.size()) - 1);
    odometer_fresh_ = true;
}

bool ProfileStream::advance_odometer() {
    // Descending lexicographic walk over non-increasing index tuples: find
    // the rightmost decrementable slot, decrement it, reset everything to its
    // right to the same value.
    for (int i = static_cast<int>(odometer_.size()) - 1; i >= 0; --i) {
        if (odometer_[i] > 0) {
            --odometer_[i];
            for (size_t t = i + 1; t < odometer_.size(); ++t)
                odometer_[t] = odometer_[i];
            return true;
        }
    }
    return false;
}

std::optional<RadiusProfile> ProfileStream::next() {
    while (!done_) {
        if (!odometer_fresh_) {
            if (!advance_odometer()) {
                ++dist_idx_;
                start_distance();
                continue;
            }
        }
        odometer_fresh_ = false;
        const double D = distances_[dist_idx_];
        RadiusProfile p;
        p.granularity = (D == 0.0) ? 0.0 : epsilon_ * D / k_;
        p.radii.reserve(k_);
        if (!euclid_) p.radii.push_back(D);
        for (int idx : odometer_) p.radii.push_back(grid_[idx]);
        return p;
    }
    return std::nullopt;
}

RadiusProfile sample_profile_general(const Instance& inst, double epsilon,
                                     std::mt19937_64& rng) {
    check_eps(epsilon);
    const int k = inst.k_eff();
    const auto dists = inst.metric().pairwise_distance_set();
    std::uniform_int_distribution<size_t> pick(0, dists.size() - 1);
    const double D = dists[pick(rng)];
    RadiusProfile p;
    p.granularity = (D == 0.0) ? 0.0 : epsilon * D / k;
    p.radii.push_back(D);
    if (k > 1) {
        std::vector<double> grid =
            (D == 0.0) ? std::vector<double>{0.0}
                       : build_grid(epsilon * D / k,
                                    static_cast<int>(std::ceil(k / epsilon)), D);
        std::uniform_int_distribution<size_t> gpick(0, grid.size() - 1);
        std::vector<double> tail;
        for (int i = 1; i < k; ++i) tail.push_back(grid[gpick(rng)]);
        std::sort(tail.rbegin(), tail.rend());
        p.radii.insert(p.radii.end(), tail.begin(), tail.end());
    }
    return p;
}

}  // namespace capradii
