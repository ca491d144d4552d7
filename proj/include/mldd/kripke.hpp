// Kripke models with named worlds, a binary accessibility relation, a prop
// valuation and singleton nominal assignments, plus the JSON file format and
// frame-class predicates.
//
// The model struct is plain data so that files describing broken models can
// still be loaded and reported on; validate() returns the violations.

#ifndef MLDD_KRIPKE_HPP
#define MLDD_KRIPKE_HPP

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "mldd/formula.hpp"

namespace mldd {

struct KripkeModel {
    std::vector<std::string> worlds;
    std::vector<std::pair<std::string, std::string>> relation;
    std::map<std::string, std::vector<std::string>> valuation;  // prop -> worlds
    std::map<std::string, std::string> nominals;                // nominal -> world
};

enum class FrameClass { All, Linear, FiniteStrictTotalOrder };

inline const char* frame_class_name(FrameClass c) {
    switch (c) {
        case FrameClass::All: return "all";
        case FrameClass::Linear: return "linear";
        case FrameClass::FiniteStrictTotalOrder: return "fsto";
    }
    return "?";
}

// Empty result means the model is well-formed.
inline std::vector<std::string> validate(const KripkeModel& m) {
    std::vector<std::string> out;
    if (m.worlds.empty()) out.push_back("model has no worlds");
    std::set<std::string> seen;
    for (const auto& w : m.worlds)
        if (!seen.insert(w).second) out.push_back("duplicate world id '" + w + "'");
    auto known = [&seen](const std::string& w) { return seen.count(w) != 0; };
    for (const auto& [a, b] : m.relation) {
        if (!known(a)) out.push_back("relation endpoint '" + a + "' not in W");
        if (!known(b)) out.push_back("relation endpoint '" + b + "' not in W");
    }
    for (const auto& [p, ws] : m.valuation)
        for (const auto& w : ws)
            if (!known(w)) out.push_back("valuation of '" + p + "' mentions '" + w + "' not in W");
    for (const auto& [i, w] : m.nominals)
        if (!known(w)) out.push_back("nominal '" + i + "' target not in W");
    return out;
}

namespace detail {

inline bool relation_has(const KripkeModel& m, const std::string& a, const std::string& b) {
    for (const auto& [x, y] : m.relation)
        if (x == a && y == b) return true;
    return false;
}

}  // namespace detail

inline bool frame_class_check(const KripkeModel& m, FrameClass c) {
    if (c == FrameClass::All) return true;
    // irreflexive
    for (const auto& [a, b] : m.relation)
        if (a == b) return false;
    // transitive
    for (const auto& [a, b] : m.relation)
        for (const auto& [c2, d] : m.relation)
            if (b == c2 && !detail::relation_has(m, a, d)) return false;
    // trichotomous
    for (const auto& a : m.worlds)
        for (const auto& b : m.worlds)
            if (a != b && !detail::relation_has(m, a, b) && !detail::relation_has(m, b, a)) return false;
    if (c == FrameClass::Linear) return true;
    // Finite strict total order: the worlds must form a single chain. Checked
    // independently of the three properties above via out-degrees, which on a
    // chain of n worlds are exactly {0, 1, ..., n-1}.
    std::map<std::string, std::size_t> outdeg;
    for (const auto& w : m.worlds) outdeg[w] = 0;
    for (const auto& [a, b] : m.relation) {
        (void)b;
        ++outdeg[a];
    }
    std::vector<const std::string*> order(m.worlds.size(), nullptr);
    for (const auto& [w, d] : outdeg) {
        if (d >= order.size() || order[d] != nullptr) return false;
        order[d] = &w;
    }
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t j = 0; j < order.size(); ++j) {
            bool expected = i > j;  // higher out-degree comes earlier in the chain
            if (detail::relation_has(m, *order[i], *order[j]) != expected) return false;
        }
    return true;
}

// ---------------------------------------------------------------------------
// JSON format:
//   {"worlds": ["w0", ...],
//    "relation": [["w0","w1"], ...],
//    "valuation": {"p": ["w0"], ...},
//    "nominals": {"i": "w0", ...}}
// "worlds" is required, the other keys optional; unknown keys are rejected.

inline nlohmann::json to_json(const KripkeModel& m) {
    nlohmann::json j;
    j["worlds"] = m.worlds;
    j["relation"] = nlohmann::json::array();
    for (const auto& [a, b] : m.relation) j["relation"].push_back({a, b});
    j["valuation"] = nlohmann::json::object();
    for (const auto& [p, ws] : m.valuation) j["valuation"][p] = ws;
    j["nominals"] = nlohmann::json::object();
    for (const auto& [i, w] : m.nominals) j["nominals"][i] = w;
    return j;
}

inline KripkeModel model_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw Error("model file: expected a JSON object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (key != "worlds" && key != "relation" && key != "valuation" && key != "nominals")
            throw Error("model file: unknown key '" + key + "'");
    }
    KripkeModel m;
    if (!j.contains("worlds") || !j["worlds"].is_array()) throw Error("model file: missing \"worlds\" array");
    for (const auto& w : j["worlds"]) {
        if (!w.is_string()) throw Error("model file: world ids must be strings");
        m.worlds.push_back(w.get<std::string>());
    }
    if (j.contains("relation")) {
        if (!j["relation"].is_array()) throw Error("model file: \"relation\" must be an array");
        for (const auto& pair : j["relation"]) {
            if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string())
                throw Error("model file: relation entries must be 2-element string arrays");
            m.relation.emplace_back(pair[0].get<std::string>(), pair[1].get<std::string>());
        }
    }
    if (j.contains("valuation")) {
        if (!j["valuation"].is_object()) throw Error("model file: \"valuation\" must be an object");
        for (const auto& [p, ws] : j["valuation"].items()) {
            if (!ws.is_array()) throw Error("model file: valuation of '" + p + "' must be an array");
            for (const auto& w : ws) {
                if (!w.is_string()) throw Error("model file: valuation worlds must be strings");
                m.valuation[p].push_back(w.get<std::string>());
            }
        }
    }
    if (j.contains("nominals")) {
        if (!j["nominals"].is_object()) throw Error("model file: \"nominals\" must be an object");
        for (const auto& [i, w] : j["nominals"].items()) {
            if (!w.is_string()) throw Error("model file: nominal targets must be strings");
            m.nominals[i] = w.get<std::string>();
        }
    }
    return m;
}

}  // namespace mldd

#endif  // MLDD_KRIPKE_HPP
