#include "capradii/generators.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "capradii/chooser.hpp"
#include "capradii/meb.hpp"

namespace capradii {

namespace {

std::vector<double> random_direction(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<double> v(d);
    double norm = 0.0;
    do {
        norm = 0.0;
        for (auto& x : v) {
            x = g(rng);
            norm += x * x;
        }
    } while (norm == 0.0);
    norm = std::sqrt(norm);
    for (auto& x : v) x /= norm;
    return v;
}

std::vector<double> point_in_ball(const std::vector<double>& center, double radius,
                                  std::mt19937_64& rng) {
    const int d = static_cast<int>(center.size());
    auto dir = random_direction(d, rng);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double r = radius * std::pow(u(rng), 1.0 / d);
    std::vector<double> p(center);
    for (int i = 0; i < d; ++i) p[i] += r * dir[i];
    return p;
}

struct PlantedGeometry {
    PointList points;
    std::vector<std::vector<int>> clusters;
    std::vector<int> cluster_of;
};

PlantedGeometry planted_geometry(const GeneratorSpec& spec, std::mt19937_64& rng) {
    if (spec.n < spec.k)
        throw std::invalid_argument("planted instance needs n >= k");
    PlantedGeometry geo;
    std::uniform_real_distribution<double> radius_dist(0.5, 2.0);
    std::vector<double> radii(spec.k);
    double rho_max = 0.0;
    for (auto& r : radii) {
        r = radius_dist(rng);
        rho_max = std::max(rho_max, r);
    }
    const double min_gap = spec.separation * rho_max;

    // Cluster centers: rejection sampling in a box wide enough to make the
    // gap easy to hit, line placement as a deterministic fallback.
    PointList centers;
    const double box = spec.k * min_gap * 3.0;
    std::uniform_real_distribution<double> coord(0.0, box);
    for (int c = 0; c < spec.k; ++c) {
        bool placed = false;
        for (int attempt = 0; attempt < 200 && !placed; ++attempt) {
            std::vector<double> cand(spec.d);
            for (auto& x : cand) x = coord(rng);
            placed = true;
            for (const auto& other : centers)
                if (coord_dist(cand, other) < min_gap) placed = false;
            if (placed) centers.push_back(std::move(cand));
        }
        if (!placed) {
            std::vector<double> cand(spec.d, 0.0);
            cand[0] = centers.empty() ? 0.0 : centers.back()[0] + 2.0 * min_gap;
            centers.push_back(std::move(cand));
        }
    }

    geo.clusters.resize(spec.k);
    geo.cluster_of.resize(spec.n);
    for (int p = 0; p < spec.n; ++p) {
        const int c = p % spec.k;  // even split
        geo.cluster_of[p] = c;
        geo.clusters[c].push_back(p);
        geo.points.push_back(point_in_ball(centers[c], radii[c], rng));
    }
    return geo;
}

GroundTruth euclidean_truth(const PlantedGeometry& geo) {
    GroundTruth truth;
    truth.assignment = geo.cluster_of;
    truth.clusters = geo.clusters;
    for (const auto& cluster : geo.clusters) {
        PointList pts;
        for (int p : cluster) pts.push_back(geo.points[p]);
        truth.balls.push_back(meb_exact_small_d(pts));
        truth.opt_upper_bound += truth.balls.back().radius;
    }
    return truth;
}

std::vector<double> matrix_from_points(const PointList& pts) {
    const int n = static_cast<int>(pts.size());
    std::vector<double> m(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double d = coord_dist(pts[i], pts[j]);
            m[static_cast<size_t>(i) * n + j] = d;
            m[static_cast<size_t>(j) * n + i] = d;
        }
    return m;
}

Generated gen_planted_euclidean(const GeneratorSpec& spec, std::mt19937_64& rng) {
    auto geo = planted_geometry(spec, rng);
    int U = spec.U;
    const int max_cluster = (spec.n + spec.k - 1) / spec.k;
    if (U <= 0) U = max_cluster;
    if (U < max_cluster)
        throw std::invalid_argument("planted capacity below cluster size");
    Generated out{Instance::euclidean(spec.k, U, geo.points), euclidean_truth(geo)};
    return out;
}

Generated gen_planted_general(const GeneratorSpec& spec, std::mt19937_64& rng) {
    GeneratorSpec geom_spec = spec;
    if (geom_spec.d <= 0) geom_spec.d = 3;
    auto geo = planted_geometry(geom_spec, rng);

    const int n = spec.n;
    std::vector<int> caps(n);
    const int cap_max = spec.capacity_max > 0 ? spec.capacity_max : n;
    for (int p = 0; p < n; ++p) {
        const int least =
            static_cast<int>(geo.clusters[geo.cluster_of[p]].size());
        std::uniform_int_distribution<int> cd(std::min(least, cap_max), cap_max);
        caps[p] = cd(rng);
    }

    GroundTruth truth;
    truth.assignment = geo.cluster_of;
    truth.clusters = geo.clusters;
    for (const auto& cluster : geo.clusters) {
        // General-metric center: the cluster member minimizing the maximal
        // in-cluster distance.
        int best = cluster[0];
        double best_r = std::numeric_limits<double>::infinity();
        for (int c : cluster) {
            double r = 0.0;
            for (int q : cluster)
                r = std::max(r, coord_dist(geo.points[c], geo.points[q]));
            if (r < best_r) {
                best_r = r;
                best = c;
            }
        }
        truth.balls.push_back(Ball::at_point(best, best_r));
        truth.opt_upper_bound += best_r;
    }

    Generated out{Instance::general(spec.k,
                                    MetricBackend::from_matrix(
                                        n, matrix_from_points(geo.points)),
                                    std::move(caps)),
                  std::move(truth)};
    return out;
}

Generated gen_uniform_random(const GeneratorSpec& spec, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> coord(0.0, 1.0);
    PointList pts(spec.n, std::vector<double>(std::max(1, spec.d)));
    for (auto& p : pts)
        for (auto& x : p) x = coord(rng);

    if (spec.metric == "euclidean") {
        int U = spec.U;
        if (U <= 0) U = (spec.n + spec.k - 1) / spec.k;
        return Generated{Instance::euclidean(spec.k, U, std::move(pts)),
                         std::nullopt};
    }
    std::vector<int> caps(spec.n);
    if (spec.uniform) {
        int U = spec.U;
        if (U <= 0) U = (spec.n + spec.k - 1) / spec.k;
        std::fill(caps.begin(), caps.end(), U);
    } else {
        const int cap_max = spec.capacity_max > 0 ? spec.capacity_max : spec.n;
        std::uniform_int_distribution<int> cd(spec.capacity_min, cap_max);
        for (int tries = 0; tries < 1000; ++tries) {
            for (auto& c : caps) c = cd(rng);
            std::vector<int> sorted = caps;
            std::sort(sorted.rbegin(), sorted.rend());
            long long sum = 0;
            for (int i = 0; i < std::min(spec.k, spec.n); ++i) sum += sorted[i];
            if (sum >= spec.n) break;
            if (tries == 999) caps[0] = spec.n;  // force feasibility
        }
    }
    return Generated{Instance::general(spec.k,
                                       MetricBackend::from_matrix(
                                           spec.n, matrix_from_points(pts)),
                                       std::move(caps)),
                     std::nullopt};
}

// Stress instance shaped like the clique reduction: incidence vectors of a
// random graph plus four sentinel points at (+-Delta, +-Delta) in two extra
// coordinates.
Generated gen_clique_gadget(const GeneratorSpec& spec, std::mt19937_64& rng) {
    const int nv = spec.gadget_vertices;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<std::pair<int, int>> edges;
    for (int a = 0; a < nv; ++a)
        for (int b = a + 1; b < nv; ++b)
            if (u(rng) < spec.gadget_edge_prob) edges.emplace_back(a, b);
    if (edges.empty()) edges.emplace_back(0, 1 % nv);
    const int m = static_cast<int>(edges.size());

    PointList pts(nv, std::vector<double>(m + 2, 0.0));
    for (int e = 0; e < m; ++e) {
        pts[edges[e].first][e] = 1.0;
        pts[edges[e].second][e] = 1.0;
    }
    double diam = 0.0;
    for (int a = 0; a < nv; ++a)
        for (int b = a + 1; b < nv; ++b)
            diam = std::max(diam, coord_dist(pts[a], pts[b]));
    const double delta = diam + 2.0 * std::sqrt(static_cast<double>(nv));
    for (int sx = 0; sx < 2; ++sx)
        for (int sy = 0; sy < 2; ++sy) {
            std::vector<double> p(m + 2, 0.0);
            p[m] = sx ? delta : -delta;
            p[m + 1] = sy ? delta : -delta;
            pts.push_back(std::move(p));
        }
    const int U = nv + 4 - spec.gadget_clique;
    return Generated{Instance::euclidean(2, U, std::move(pts)), std::nullopt};
}

}  // namespace

std::string GeneratorSpec::id() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::planted_euclidean: os << "planted-euclidean"; break;
        case Kind::planted_general: os << "planted-general"; break;
        case Kind::uniform_random: os << "uniform-random-" << metric; break;
        case Kind::adversarial_clique_gadget: os << "clique-gadget"; break;
    }
    os << "-n" << n << "-k" << k;
    if (kind != Kind::planted_general && metric != "general") os << "-d" << d;
    os << "-s" << seed;
    return os.str();
}

Generated generate(const GeneratorSpec& spec) {
    auto rng = rng_for(spec.seed, 0xa11ce);
    switch (spec.kind) {
        case GeneratorSpec::Kind::planted_euclidean:
            return gen_planted_euclidean(spec, rng);
        case GeneratorSpec::Kind::planted_general:
            return gen_planted_general(spec, rng);
        case GeneratorSpec::Kind::uniform_random:
            return gen_uniform_random(spec, rng);
        case GeneratorSpec::Kind::adversarial_clique_gadget:
            return gen_clique_gadget(spec, rng);
    }
    throw std::logic_error("unknown generator kind");
}

GeneratorSpec generator_spec_from_json(const nlohmann::json& j) {
    GeneratorSpec spec;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "planted-euclidean")
        spec.kind = GeneratorSpec::Kind::planted_euclidean;
    else if (kind == "planted-general")
        spec.kind = GeneratorSpec::Kind::planted_general;
    else if (kind == "uniform-random")
        spec.kind = GeneratorSpec::Kind::uniform_random;
    else if (kind == "adversarial-clique-gadget")
        spec.kind = GeneratorSpec::Kind::adversarial_clique_gadget;
    else
        throw std::invalid_argument("unknown generator kind: " + kind);

    spec.n = j.value("n", spec.n);
    spec.k = j.value("k", spec.k);
    spec.d = j.value("d", spec.d);
    spec.U = j.value("U", spec.U);
    spec.capacity_min = j.value("capacity_min", spec.capacity_min);
    spec.capacity_max = j.value("capacity_max", spec.capacity_max);
    spec.separation = j.value("separation", spec.separation);
    spec.seed = j.value("seed", spec.seed);
    spec.metric = j.value("metric", spec.metric);
    spec.uniform = j.value("uniform", spec.uniform);
    spec.gadget_vertices = j.value("gadget_vertices", spec.gadget_vertices);
    spec.gadget_edge_prob = j.value("gadget_edge_prob", spec.gadget_edge_prob);
    spec.gadget_clique = j.value("gadget_clique", spec.gadget_clique);
    return spec;
}

nlohmann::json ground_truth_to_json(const GroundTruth& truth) {
    nlohmann::json balls = nlohmann::json::array();
    for (const auto& b : truth.balls) {
        nlohmann::json jb;
        if (b.point_centered())
            jb["center"] = b.center_id;
        else
            jb["center"] = b.center_coords;
        jb["radius"] = b.radius;
        balls.push_back(jb);
    }
    return nlohmann::json{{"balls", balls},
                          {"assignment", truth.assignment},
                          {"opt_upper_bound", truth.opt_upper_bound}};
}

}  // namespace capradii
