#include "capradii/metric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace capradii {

namespace {

double euclid_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

void validate_matrix(int n, const std::vector<double>& m) {
    if (n <= 0) throw std::invalid_argument("matrix backend needs n >= 1");
    if (static_cast<int>(m.size()) != n * n)
        throw std::invalid_argument("distance matrix is not n x n");
    double maxd = 0.0;
    for (double v : m) maxd = std::max(maxd, v);
    const double tol = kMetricRelTol * std::max(1.0, maxd);
    for (int i = 0; i < n; ++i) {
        if (std::abs(m[i * n + i]) > tol)
            throw std::invalid_argument("dist(p,p) != 0");
        for (int j = 0; j < n; ++j) {
            if (m[i * n + j] < -tol)
                throw std::invalid_argument("negative distance");
            if (std::abs(m[i * n + j] - m[j * n + i]) > tol)
                throw std::invalid_argument("asymmetric distance matrix");
        }
    }
    // Triangle inequality: exhaustive for small n, otherwise 1000 random
    // triples with a fixed seed so loading is deterministic.
    auto check = [&](int i, int j, int l) {
        if (m[i * n + l] > m[i * n + j] + m[j * n + l] + tol)
            throw std::invalid_argument("triangle inequality violated");
    };
    if (static_cast<long long>(n) * n * n <= 8000) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int l = 0; l < n; ++l) check(i, j, l);
    } else {
        std::mt19937_64 rng(0x5eedu);
        std::uniform_int_distribution<int> pick(0, n - 1);
        for (int t = 0; t < 1000; ++t) check(pick(rng), pick(rng), pick(rng));
    }
}

}  // namespace

MetricBackend MetricBackend::from_matrix(int n, std::vector<double> row_major) {
    validate_matrix(n, row_major);
    MetricBackend b;
    b.n_ = n;
    b.matrix_ = std::move(row_major);
    return b;
}

MetricBackend MetricBackend::from_points(std::vector<std::vector<double>> pts) {
    if (pts.empty()) throw std::invalid_argument("point backend needs n >= 1");
    const int d = static_cast<int>(pts[0].size());
    if (d <= 0) throw std::invalid_argument("points need dimension >= 1");
    for (const auto& p : pts)
        if (static_cast<int>(p.size()) != d)
            throw std::invalid_argument("inconsistent point dimensions");
    MetricBackend b;
    b.n_ = static_cast<int>(pts.size());
    b.dim_ = d;
    b.points_ = std::move(pts);
    return b;
}

double MetricBackend::dist(PointId p, PointId q) const {
    if (euclidean()) return euclid_dist(points_[p], points_[q]);
    return matrix_[static_cast<size_t>(p) * n_ + q];
}

double MetricBackend::dist_to_center(PointId p, const Ball& b) const {
    if (b.point_centered()) return dist(p, b.center_id);
    return euclid_dist(points_[p], b.center_coords);
}

double MetricBackend::dist_point_to_ball(PointId p, const Ball& b) const {
    return std::max(0.0, dist_to_center(p, b) - b.radius);
}

std::vector<double> MetricBackend::pairwise_distance_set() const {
    std::vector<double> out;
    out.push_back(0.0);
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j) out.push_back(dist(i, j));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

double MetricBackend::diameter() const {
    double d = 0.0;
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j) d = std::max(d, dist(i, j));
    return d;
}

Instance Instance::general(int k, MetricBackend metric, std::vector<int> capacities) {
    if (k < 1) throw std::invalid_argument("k must be positive");
    if (static_cast<int>(capacities.size()) != metric.n())
        throw std::invalid_argument("capacities size != n");
    for (int c : capacities)
        if (c < 0) throw std::invalid_argument("negative capacity");
    Instance inst;
    inst.metric_ = std::move(metric);
    inst.capacities_ = std::move(capacities);
    inst.k_ = k;
    if (std::all_of(inst.capacities_.begin(), inst.capacities_.end(),
                    [&](int c) { return c == inst.capacities_[0]; }))
        inst.uniform_capacity_ = inst.capacities_[0];
    std::vector<int> sorted = inst.capacities_;
    std::sort(sorted.rbegin(), sorted.rend());
    long long coverable = 0;
    for (int i = 0; i < std::min<int>(k, sorted.size()); ++i) coverable += sorted[i];
    inst.certified_infeasible_ = coverable < inst.n();
    return inst;
}

Instance Instance::euclidean(int k, int U, std::vector<std::vector<double>> pts) {
    if (k < 1) throw std::invalid_argument("k must be positive");
    if (U < 0) throw std::invalid_argument("negative capacity");
    Instance inst;
    inst.metric_ = MetricBackend::from_points(std::move(pts));
    inst.capacities_.assign(inst.metric_.n(), U);
    inst.k_ = k;
    inst.uniform_capacity_ = U;
    inst.certified_infeasible_ =
        static_cast<long long>(k) * U < inst.metric_.n();
    return inst;
}

}  // namespace capradii
