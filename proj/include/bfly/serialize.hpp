#pragma once

#include <json.hpp>

#include "bfly/butterfly.hpp"
#include "bfly/elimination.hpp"
#include "bfly/permutation.hpp"

namespace bfly {

inline nlohmann::json angle_vector_to_json(const AngleVector& theta) {
    return {{"kind", kind_name(theta.kind)}, {"n", theta.n}, {"angles", theta.angles}};
}

inline AngleVector angle_vector_from_json(const nlohmann::json& j) {
    return AngleVector(kind_from_name(j.at("kind").get<std::string>()),
                       j.at("n").get<std::size_t>(), j.at("angles").get<std::vector<double>>());
}

// 1-based image array plus the factored transposition string.
inline nlohmann::json permutation_to_json(const Permutation& p) {
    return {{"images", p.one_based()}, {"cycles", p.cycle_transpositions()}};
}

inline Permutation permutation_from_json(const nlohmann::json& j) {
    std::vector<std::size_t> one_based = j.at("images").get<std::vector<std::size_t>>();
    for (std::size_t& v : one_based) {
        if (v == 0) throw std::invalid_argument("permutation json: images are 1-based");
        v -= 1;
    }
    return Permutation(std::move(one_based));
}

// One JSON object per line: {"k":..., "row_swap":..., "col_swap":..., "pivot_value":...}.
inline std::string pivot_log_to_jsonl(const GeFactorization& fact) {
    std::string out;
    for (const PivotStep& s : fact.pivot_log) {
        nlohmann::json j{{"k", s.step},
                         {"row_swap", s.row_swap},
                         {"col_swap", s.col_swap},
                         {"pivot_value", s.pivot_value}};
        out += j.dump() + "\n";
    }
    return out;
}

}  // namespace bfly
