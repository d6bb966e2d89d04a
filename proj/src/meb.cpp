#include "capradii/meb.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>

namespace capradii {

double coord_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

namespace {

struct Sphere {
    std::vector<double> center;
    double radius = -1.0;  // -1 marks "empty"

    bool contains(const std::vector<double>& p) const {
        if (radius < 0.0) return false;
        const double d = coord_dist(center, p);
        return d <= radius + 1e-10 * std::max(1.0, radius);
    }
};

// Sphere through all points of S (on the boundary), center restricted to the
// affine hull of S. nullopt when S is affinely dependent.
std::optional<Sphere> circumsphere(const std::vector<const std::vector<double>*>& S) {
    const int m = static_cast<int>(S.size());
    if (m == 0) return std::nullopt;
    const auto& p0 = *S[0];
    const int d = static_cast<int>(p0.size());
    if (m == 1) return Sphere{p0, 0.0};
    const int r = m - 1;
    // Solve A x = b, A_{ij} = 2 (p_i - p0).(p_j - p0), b_i = |p_i - p0|^2.
    std::vector<std::vector<double>> A(r, std::vector<double>(r + 1, 0.0));
    double scale = 0.0;
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) {
            double dot = 0.0;
            for (int t = 0; t < d; ++t)
                dot += ((*S[i + 1])[t] - p0[t]) * ((*S[j + 1])[t] - p0[t]);
            A[i][j] = 2.0 * dot;
            scale = std::max(scale, std::abs(A[i][j]));
        }
        double norm = 0.0;
        for (int t = 0; t < d; ++t) {
            const double v = (*S[i + 1])[t] - p0[t];
            norm += v * v;
        }
        A[i][r] = norm;
    }
    // Gaussian elimination with partial pivoting.
    for (int col = 0; col < r; ++col) {
        int piv = col;
        for (int row = col + 1; row < r; ++row)
            if (std::abs(A[row][col]) > std::abs(A[piv][col])) piv = row;
        if (std::abs(A[piv][col]) <= 1e-12 * std::max(1.0, scale))
            return std::nullopt;
        std::swap(A[piv], A[col]);
        for (int row = 0; row < r; ++row) {
            if (row == col) continue;
            const double f = A[row][col] / A[col][col];
            for (int t = col; t <= r; ++t) A[row][t] -= f * A[col][t];
        }
    }
    std::vector<double> center = p0;
    for (int i = 0; i < r; ++i) {
        const double lambda = A[i][r] / A[i][i];
        for (int t = 0; t < d; ++t)
            center[t] += lambda * ((*S[i + 1])[t] - p0[t]);
    }
    return Sphere{center, coord_dist(center, p0)};
}

// Smallest ball with every point of R on (or within) its boundary set:
// brute force over boundary subsets. |R| <= d+1 so this is cheap and immune
// to degeneracy.
Sphere min_ball_with_boundary(const std::vector<const std::vector<double>*>& R) {
    if (R.empty()) return Sphere{};
    Sphere best;
    const int m = static_cast<int>(R.size());
    for (int mask = 1; mask < (1 << m); ++mask) {
        std::vector<const std::vector<double>*> sub;
        for (int i = 0; i < m; ++i)
            if (mask & (1 << i)) sub.push_back(R[i]);
        auto s = circumsphere(sub);
        if (!s) continue;
        bool all = true;
        for (const auto* p : R)
            if (!s->contains(*p)) {
                all = false;
                break;
            }
        if (all && (best.radius < 0.0 || s->radius < best.radius)) best = *s;
    }
    return best;
}

Sphere welzl(const PointList& pts, std::vector<int>& order, int end,
             std::vector<const std::vector<double>*>& support, int max_support) {
    if (end == 0 || static_cast<int>(support.size()) == max_support)
        return min_ball_with_boundary(support);
    Sphere ball = welzl(pts, order, end - 1, support, max_support);
    const auto& p = pts[order[end - 1]];
    if (ball.contains(p)) return ball;
    support.push_back(&p);
    Sphere out = welzl(pts, order, end - 1, support, max_support);
    support.pop_back();
    return out;
}

}  // namespace

Ball meb_exact_small_d(const PointList& points) {
    if (points.empty()) throw std::invalid_argument("meb of empty set");
    const int d = static_cast<int>(points[0].size());
    if (d > 4) throw std::invalid_argument("exact meb supports d <= 4");
    std::vector<int> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull ^ points.size());
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<const std::vector<double>*> support;
    Sphere s = welzl(points, order, static_cast<int>(points.size()), support, d + 1);
    return Ball::at_coords(std::move(s.center), std::max(0.0, s.radius));
}

Ball meb_approx(const PointList& points, double epsilon) {
    if (points.empty()) throw std::invalid_argument("meb of empty set");
    if (!(epsilon > 0.0) || epsilon >= 1.0)
        throw std::invalid_argument("epsilon must be in (0, 1)");
    std::vector<double> c = points[0];
    const int iters = static_cast<int>(std::ceil(1.0 / (epsilon * epsilon)));
    for (int t = 1; t <= iters; ++t) {
        size_t far = 0;
        double far_d = -1.0;
        for (size_t i = 0; i < points.size(); ++i) {
            const double dd = coord_dist(c, points[i]);
            if (dd > far_d) {
                far_d = dd;
                far = i;
            }
        }
        for (size_t t2 = 0; t2 < c.size(); ++t2)
            c[t2] += (points[far][t2] - c[t2]) / (t + 1);
    }
    double radius = 0.0;
    for (const auto& p : points) radius = std::max(radius, coord_dist(c, p));
    return Ball::at_coords(std::move(c), radius);
}

Ball meb_of_two_balls(const Ball& a, const Ball& b) {
    const double dist = coord_dist(a.center_coords, b.center_coords);
    if (dist + b.radius <= a.radius) return a;
    if (dist + a.radius <= b.radius) return b;
    const double radius = (dist + a.radius + b.radius) / 2.0;
    // Center on the segment, radius - r_a away from a's center.
    const double t = (radius - a.radius) / dist;
    std::vector<double> c(a.center_coords.size());
    for (size_t i = 0; i < c.size(); ++i)
        c[i] = a.center_coords[i] + t * (b.center_coords[i] - a.center_coords[i]);
    return Ball::at_coords(std::move(c), radius);
}

Ball cover_two_balls(const Ball& a, const Ball& b) {
    const double dist = coord_dist(a.center_coords, b.center_coords);
    const double rsum = a.radius + b.radius;
    std::vector<double> c = a.center_coords;
    if (rsum > 0.0 && dist > 0.0) {
        const double t = std::min(1.0, b.radius / rsum);
        for (size_t i = 0; i < c.size(); ++i)
            c[i] += t * (b.center_coords[i] - a.center_coords[i]);
    }
    return Ball::at_coords(std::move(c), rsum);
}

}  // namespace capradii
