#include "capradii/io.hpp"

#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace capradii {

using nlohmann::json;

Instance instance_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "general") {
        const int n = j.at("n").get<int>();
        const int k = j.at("k").get<int>();
        std::vector<double> flat;
        flat.reserve(static_cast<size_t>(n) * n);
        for (const auto& row : j.at("dist"))
            for (const auto& v : row) flat.push_back(v.get<double>());
        auto caps = j.at("capacities").get<std::vector<int>>();
        return Instance::general(k, MetricBackend::from_matrix(n, std::move(flat)),
                                 std::move(caps));
    }
    if (kind == "euclidean") {
        const int d = j.at("d").get<int>();
        const int k = j.at("k").get<int>();
        const int U = j.at("U").get<int>();
        auto pts = j.at("points").get<std::vector<std::vector<double>>>();
        for (const auto& p : pts)
            if (static_cast<int>(p.size()) != d)
                throw std::invalid_argument("point dimension mismatch");
        return Instance::euclidean(k, U, std::move(pts));
    }
    throw std::invalid_argument("unknown instance kind: " + kind);
}

json instance_to_json(const Instance& inst) {
    json j;
    if (inst.euclidean()) {
        j["kind"] = "euclidean";
        j["d"] = inst.metric().dim();
        j["k"] = inst.k();
        j["U"] = *inst.uniform_capacity();
        j["points"] = inst.metric().points();
    } else {
        const int n = inst.n();
        j["kind"] = "general";
        j["n"] = n;
        j["k"] = inst.k();
        std::vector<std::vector<double>> rows(n, std::vector<double>(n));
        for (int i = 0; i < n; ++i)
            for (int q = 0; q < n; ++q) rows[i][q] = inst.metric().dist(i, q);
        j["dist"] = rows;
        j["capacities"] = inst.capacities();
    }
    return j;
}

Solution solution_from_json(const json& j) {
    Solution sol;
    for (const auto& jb : j.at("balls")) {
        const auto& c = jb.at("center");
        const double r = jb.at("radius").get<double>();
        if (c.is_array())
            sol.balls.push_back(Ball::at_coords(c.get<std::vector<double>>(), r));
        else
            sol.balls.push_back(Ball::at_point(c.get<int>(), r));
    }
    sol.assignment = j.at("assignment").get<std::vector<int>>();
    sol.cost = j.at("cost").get<double>();
    return sol;
}

json solution_to_json(const Solution& sol) {
    json balls = json::array();
    for (const auto& b : sol.balls) {
        json jb;
        if (b.point_centered())
            jb["center"] = b.center_id;
        else
            jb["center"] = b.center_coords;
        jb["radius"] = b.radius;
        balls.push_back(jb);
    }
    return json{{"balls", balls}, {"assignment", sol.assignment},
                {"cost", sol.cost}};
}

namespace {
json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}
void save_json(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}
}  // namespace

Instance load_instance(const std::string& path) {
    return instance_from_json(load_json(path));
}
void save_instance(const Instance& inst, const std::string& path) {
    save_json(instance_to_json(inst), path);
}
Solution load_solution(const std::string& path) {
    return solution_from_json(load_json(path));
}
void save_solution(const Solution& sol, const std::string& path) {
    save_json(solution_to_json(sol), path);
}

}  // namespace capradii
