#include "capradii/feasibility.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace capradii {

namespace {

// Dinic on the small unit-ish network. Node layout: 0 = source,
// 1..nb = balls, nb+1..nb+n = points, nb+n+1 = sink.
class Dinic {
  public:
    explicit Dinic(int nodes) : head_(nodes, -1), level_(nodes), it_(nodes) {}

    void add_edge(int u, int v, long long cap) {
        edges_.push_back({v, head_[u], cap});
        head_[u] = static_cast<int>(edges_.size()) - 1;
        edges_.push_back({u, head_[v], 0});
        head_[v] = static_cast<int>(edges_.size()) - 1;
    }

    long long max_flow(int s, int t) {
        long long flow = 0;
        while (bfs(s, t)) {
            it_ = head_;
            while (long long f = dfs(s, t, 1LL << 60)) flow += f;
        }
        return flow;
    }

    // cap > 0 on the reverse edge of (ball -> point) marks a used arc.
    long long residual(int edge_id) const { return edges_[edge_id].cap; }

  private:
    struct Edge {
        int to;
        int next;
        long long cap;
    };

    bool bfs(int s, int t) {
        std::fill(level_.begin(), level_.end(), -1);
        std::vector<int> q{s};
        level_[s] = 0;
        for (size_t h = 0; h < q.size(); ++h) {
            const int u = q[h];
            for (int e = head_[u]; e != -1; e = edges_[e].next) {
                if (edges_[e].cap > 0 && level_[edges_[e].to] < 0) {
                    level_[edges_[e].to] = level_[u] + 1;
                    q.push_back(edges_[e].to);
                }
            }
        }
        return level_[t] >= 0;
    }

    long long dfs(int u, int t, long long limit) {
        if (u == t) return limit;
        for (int& e = it_[u]; e != -1; e = edges_[e].next) {
            Edge& ed = edges_[e];
            if (ed.cap > 0 && level_[ed.to] == level_[u] + 1) {
                const long long f = dfs(ed.to, t, std::min(limit, ed.cap));
                if (f > 0) {
                    ed.cap -= f;
                    edges_[e ^ 1].cap += f;
                    return f;
                }
            }
        }
        return 0;
    }

    std::vector<Edge> edges_;
    std::vector<int> head_;
    std::vector<int> level_;
    std::vector<int> it_;
};

}  // namespace

std::optional<std::vector<int>> find_assignment_with_capacities(
    const Instance& inst, const std::vector<Ball>& balls,
    const std::vector<long long>& ball_caps) {
    if (balls.empty()) throw std::invalid_argument("find_assignment: no balls");
    assert(balls.size() == ball_caps.size());
    const int n = inst.n();
    const int nb = static_cast<int>(balls.size());
    const int source = 0, sink = nb + n + 1;
    Dinic dinic(nb + n + 2);

    // Arc order fixed by (ball index, point index).
    std::vector<std::vector<int>> arc_edge(nb, std::vector<int>(n, -1));
    int next_id = 0;
    for (int b = 0; b < nb; ++b) {
        dinic.add_edge(source, 1 + b, std::max<long long>(0, ball_caps[b]));
        next_id += 2;
    }
    for (int b = 0; b < nb; ++b) {
        for (int p = 0; p < n; ++p) {
            if (inst.metric().dist_point_to_ball(p, balls[b]) <=
                kContainmentSlack) {
                dinic.add_edge(1 + b, 1 + nb + p, 1);
                arc_edge[b][p] = next_id;
                next_id += 2;
            }
        }
    }
    for (int p = 0; p < n; ++p) {
        dinic.add_edge(1 + nb + p, sink, 1);
        next_id += 2;
    }

    if (dinic.max_flow(source, sink) < n) return std::nullopt;

    std::vector<int> assignment(n, -1);
    for (int b = 0; b < nb; ++b)
        for (int p = 0; p < n; ++p)
            if (arc_edge[b][p] >= 0 && dinic.residual(arc_edge[b][p] ^ 1) > 0)
                assignment[p] = b;
    for (int p = 0; p < n; ++p) assert(assignment[p] >= 0);
    return assignment;
}

std::optional<std::vector<int>> find_assignment(const Instance& inst,
                                                const std::vector<Ball>& balls) {
    std::vector<long long> caps;
    caps.reserve(balls.size());
    for (const auto& b : balls)
        caps.push_back(b.point_centered() ? inst.capacity(b.center_id)
                                          : inst.uniform_capacity().value_or(0));
    return find_assignment_with_capacities(inst, balls, caps);
}

std::optional<std::vector<int>> find_assignment_with_capacity_scale(
    const Instance& inst, const std::vector<Ball>& balls, double scale) {
    if (!inst.uniform())
        throw std::invalid_argument("capacity scaling needs uniform capacities");
    if (scale < 1.0) throw std::invalid_argument("capacity scale must be >= 1");
    const long long cap = static_cast<long long>(
        std::floor(scale * (*inst.uniform_capacity()) + 1e-12));
    return find_assignment_with_capacities(
        inst, balls, std::vector<long long>(balls.size(), cap));
}

}  // namespace capradii
