#pragma once

#include <optional>
#include <vector>

namespace capradii {

using PointId = int;

// Absolute slack used by every containment check so feasibility and
// verification never disagree. The algorithms compose up to ~15 radius
// additions, hence an absolute rather than relative model.
inline constexpr double kContainmentSlack = 1e-9;
// Relative tolerance for recomputing a solution's cost.
inline constexpr double kCostRelTol = 1e-12;
// Relative tolerance for the metric-axiom checks on loaded matrices.
inline constexpr double kMetricRelTol = 1e-9;

// A ball either sits on an input point (general metric) or on a free
// coordinate (Euclidean). radius >= 0 always.
struct Ball {
    PointId center_id = -1;             // >= 0 iff the center is an input point
    std::vector<double> center_coords;  // non-empty iff Euclidean free center
    double radius = 0.0;

    static Ball at_point(PointId id, double r) { return Ball{id, {}, r}; }
    static Ball at_coords(std::vector<double> c, double r) {
        return Ball{-1, std::move(c), r};
    }
    bool point_centered() const { return center_id >= 0; }
};

// Uniform distance access for the two instance kinds. A matrix backend is
// validated for the metric axioms at load; the Euclidean backend satisfies
// them by construction. Read-only after load, safe for concurrent reads.
class MetricBackend {
  public:
    // Throws std::invalid_argument when the matrix violates symmetry,
    // non-negativity, identity or the (sampled) triangle inequality beyond
    // kMetricRelTol.
    static MetricBackend from_matrix(int n, std::vector<double> row_major);
    static MetricBackend from_points(std::vector<std::vector<double>> pts);

    bool euclidean() const { return !points_.empty(); }
    int n() const { return n_; }
    int dim() const { return dim_; }

    double dist(PointId p, PointId q) const;
    // Distance from point p to the ball's center (either kind).
    double dist_to_center(PointId p, const Ball& b) const;
    // max(0, dist(p, center) - radius).
    double dist_point_to_ball(PointId p, const Ball& b) const;
    bool contains(const Ball& b, PointId p) const {
        return dist_to_center(p, b) <= b.radius + kContainmentSlack;
    }

    // Sorted ascending, deduplicated by exact equality, always includes 0.
    std::vector<double> pairwise_distance_set() const;
    // Largest pairwise distance.
    double diameter() const;

    const std::vector<std::vector<double>>& points() const { return points_; }

  private:
    int n_ = 0;
    int dim_ = 0;
    std::vector<double> matrix_;  // row-major n*n, empty for Euclidean
    std::vector<std::vector<double>> points_;
};

// Point set with metric access, per-point capacities and the cluster budget
// k. Immutable after construction; safe to share across parallel workers.
class Instance {
  public:
    // General metric: per-point capacities eta.
    static Instance general(int k, MetricBackend metric, std::vector<int> capacities);
    // Euclidean: uniform capacity U, centers may be arbitrary coordinates.
    static Instance euclidean(int k, int U, std::vector<std::vector<double>> pts);

    const MetricBackend& metric() const { return metric_; }
    int n() const { return metric_.n(); }
    int k() const { return k_; }
    // Effective ball budget: at most n distinct centers exist in a general
    // metric, and extra balls are never needed in the Euclidean case either.
    int k_eff() const { return std::min(k_, n()); }
    int capacity(PointId p) const { return capacities_[p]; }
    const std::vector<int>& capacities() const { return capacities_; }
    bool uniform() const { return uniform_capacity_.has_value(); }
    std::optional<int> uniform_capacity() const { return uniform_capacity_; }
    bool euclidean() const { return metric_.euclidean(); }

    // True when no capacity-respecting solution can exist: the k largest
    // capacities sum below n (for uniform capacities this is exactly the
    // n <= k*U normalization).
    bool certified_infeasible() const { return certified_infeasible_; }

  private:
    Instance() = default;
    MetricBackend metric_;
    std::vector<int> capacities_;
    int k_ = 1;
    std::optional<int> uniform_capacity_;
    bool certified_infeasible_ = false;
};

}  // namespace capradii
