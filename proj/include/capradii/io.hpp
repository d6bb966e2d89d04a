#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "capradii/core.hpp"

namespace capradii {

// Instance files, UTF-8 JSON:
//   {"kind":"general","n":...,"k":...,"dist":[[row-major n x n]],"capacities":[n ints]}
//   {"kind":"euclidean","d":...,"k":...,"U":...,"points":[[d reals],...]}
// Solution files:
//   {"balls":[{"center":<id or [coords]>,"radius":r},...],"assignment":[n ints],"cost":c}

Instance instance_from_json(const nlohmann::json& j);
nlohmann::json instance_to_json(const Instance& inst);
Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);

Solution solution_from_json(const nlohmann::json& j);
nlohmann::json solution_to_json(const Solution& sol);
Solution load_solution(const std::string& path);
void save_solution(const Solution& sol, const std::string& path);

}  // namespace capradii
