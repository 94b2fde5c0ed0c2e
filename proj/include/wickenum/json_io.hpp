// JSON forms of the core values (nlohmann::json).
#pragma once

#include <json.hpp>

#include "wickenum/algebra.hpp"

namespace wickenum {

// Canonical polynomial serialization: one object per term, in canonical term
// order; coefficients as exact "p/q" strings.
inline nlohmann::json poly_to_json(const ExactPoly& p) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [m, c] : p.terms()) {
        nlohmann::json exps = nlohmann::json::object();
        for (const auto& [v, e] : m.factors()) exps[v.name()] = e;
        arr.push_back({{"exps", exps}, {"coeff", rat_str(c)}});
    }
    return arr;
}

}  // namespace wickenum
