// Bisimulation checkers and bounded searchers.
//
// Standard: Atom + Zig + Zag on every pair. The description variant adds
// totality (serial and surjective) and the Singular condition, per pair: the
// left world maps only to the right one exactly when the right world is mapped
// only from the left one. The hybrid variant adds Nom for nominals interpreted
// in both models; the counting variant requires a bijection inside the
// relation.
//
// Searching: Atom-compatible pairs refined to the greatest standard
// bisimulation. Standard/hybrid relations are grown from the required pairs
// inside that fixpoint. The description and counting conditions are not closed
// under union, so those searches enumerate subsets of the fixpoint, smallest
// relation first, under a candidate cap.

#ifndef MLDD_BISIM_HPP
#define MLDD_BISIM_HPP

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "mldd/eval.hpp"
#include "mldd/formula.hpp"
#include "mldd/kripke.hpp"
#include "mldd/oracle.hpp"  // for LimitExceeded

namespace mldd {
namespace bisim {

enum class BisimKind { Standard, DD, Hybrid, MLC };

inline const char* kind_name(BisimKind k) {
    switch (k) {
        case BisimKind::Standard: return "standard";
        case BisimKind::DD: return "dd";
        case BisimKind::Hybrid: return "h";
        case BisimKind::MLC: return "mlc";
    }
    return "?";
}

struct BisimRelation {
    std::vector<std::pair<std::string, std::string>> pairs;
};

inline nlohmann::json relation_to_json(const BisimRelation& z) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& [a, b] : z.pairs) j.push_back({a, b});
    return j;
}

inline BisimRelation relation_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw Error("relation file: expected a JSON array");
    BisimRelation z;
    for (const auto& pair : j) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string())
            throw Error("relation file: entries must be 2-element string arrays");
        z.pairs.emplace_back(pair[0].get<std::string>(), pair[1].get<std::string>());
    }
    return z;
}

struct Violation {
    std::string condition;  // atom | zig | zag | serial | surjective | singular | nom | bijection
    std::string detail;
};

struct SearchLimits {
    std::uint64_t max_candidates = 1u << 20;
};

namespace bdetail {

struct Indexed {
    const KripkeModel* m;
    std::vector<std::string> worlds;
    std::vector<std::vector<bool>> adj;
    std::vector<std::set<std::string>> props;  // per world

    explicit Indexed(const KripkeModel& model) : m(&model) {
        auto violations = validate(model);
        if (!violations.empty()) throw Error("invalid model: " + violations.front());
        worlds = model.worlds;
        adj.assign(worlds.size(), std::vector<bool>(worlds.size(), false));
        props.resize(worlds.size());
        for (const auto& [a, b] : model.relation) adj[index(a)][index(b)] = true;
        for (const auto& [p, ws] : model.valuation)
            for (const auto& w : ws) props[index(w)].insert(p);
    }

    std::size_t index(const std::string& w) const {
        auto it = std::find(worlds.begin(), worlds.end(), w);
        if (it == worlds.end()) throw Error("unknown world '" + w + "'");
        return static_cast<std::size_t>(it - worlds.begin());
    }
};

using PairMatrix = std::vector<std::vector<bool>>;

inline PairMatrix to_matrix(const Indexed& l, const Indexed& r, const BisimRelation& z) {
    PairMatrix zm(l.worlds.size(), std::vector<bool>(r.worlds.size(), false));
    for (const auto& [a, b] : z.pairs) {
        std::size_t i, j;
        try {
            i = l.index(a);
            j = r.index(b);
        } catch (const Error&) {
            throw Error("ill-typed pair (" + a + ", " + b + ")");
        }
        zm[i][j] = true;
    }
    return zm;
}

inline bool atom_ok(const Indexed& l, const Indexed& r, std::size_t i, std::size_t j) {
    return l.props[i] == r.props[j];
}

inline bool zig_ok(const Indexed& l, const Indexed& r, const PairMatrix& z, std::size_t i, std::size_t j) {
    for (std::size_t v = 0; v < l.worlds.size(); ++v) {
        if (!l.adj[i][v]) continue;
        bool matched = false;
        for (std::size_t v2 = 0; v2 < r.worlds.size() && !matched; ++v2)
            if (z[v][v2] && r.adj[j][v2]) matched = true;
        if (!matched) return false;
    }
    return true;
}

inline bool zag_ok(const Indexed& l, const Indexed& r, const PairMatrix& z, std::size_t i, std::size_t j) {
    for (std::size_t v2 = 0; v2 < r.worlds.size(); ++v2) {
        if (!r.adj[j][v2]) continue;
        bool matched = false;
        for (std::size_t v = 0; v < l.worlds.size() && !matched; ++v)
            if (z[v][v2] && l.adj[i][v]) matched = true;
        if (!matched) return false;
    }
    return true;
}

// Maximum bipartite matching over z (Kuhn's augmenting paths).
inline std::size_t matching_size(const PairMatrix& z, std::size_t nl, std::size_t nr) {
    std::vector<int> match_right(nr, -1);
    std::size_t matched = 0;
    for (std::size_t i = 0; i < nl; ++i) {
        std::vector<bool> visited(nr, false);
        auto augment = [&](std::size_t node, const auto& self) -> bool {
            for (std::size_t j = 0; j < nr; ++j) {
                if (!z[node][j] || visited[j]) continue;
                visited[j] = true;
                if (match_right[j] < 0 || self(static_cast<std::size_t>(match_right[j]), self)) {
                    match_right[j] = static_cast<int>(node);
                    return true;
                }
            }
            return false;
        };
        if (augment(i, augment)) ++matched;
    }
    return matched;
}

inline void check_into(BisimKind kind, const Indexed& l, const Indexed& r, const PairMatrix& z,
                       std::vector<Violation>& out) {
    for (std::size_t i = 0; i < l.worlds.size(); ++i)
        for (std::size_t j = 0; j < r.worlds.size(); ++j) {
            if (!z[i][j]) continue;
            if (!atom_ok(l, r, i, j))
                out.push_back({"atom", "(" + l.worlds[i] + ", " + r.worlds[j] + ") differ on propositions"});
            if (!zig_ok(l, r, z, i, j))
                out.push_back({"zig", "(" + l.worlds[i] + ", " + r.worlds[j] + ") has an unmatched successor on the left"});
            if (!zag_ok(l, r, z, i, j))
                out.push_back({"zag", "(" + l.worlds[i] + ", " + r.worlds[j] + ") has an unmatched successor on the right"});
        }
    if (kind == BisimKind::DD) {
        for (std::size_t i = 0; i < l.worlds.size(); ++i) {
            bool any = false;
            for (std::size_t j = 0; j < r.worlds.size(); ++j) any = any || z[i][j];
            if (!any) out.push_back({"serial", "not serial: world '" + l.worlds[i] + "' has no image"});
        }
        for (std::size_t j = 0; j < r.worlds.size(); ++j) {
            bool any = false;
            for (std::size_t i = 0; i < l.worlds.size(); ++i) any = any || z[i][j];
            if (!any)
                out.push_back({"surjective", "not surjective: world '" + r.worlds[j] + "' has no preimage"});
        }
        for (std::size_t i = 0; i < l.worlds.size(); ++i)
            for (std::size_t j = 0; j < r.worlds.size(); ++j) {
                if (!z[i][j]) continue;
                std::size_t img = 0, pre = 0;
                for (std::size_t j2 = 0; j2 < r.worlds.size(); ++j2) img += z[i][j2];
                for (std::size_t i2 = 0; i2 < l.worlds.size(); ++i2) pre += z[i2][j];
                if ((img == 1) != (pre == 1))
                    out.push_back({"singular", "(" + l.worlds[i] + ", " + r.worlds[j] +
                                                    ") is singular on one side only"});
            }
    }
    if (kind == BisimKind::Hybrid) {
        for (const auto& [i, wl] : l.m->nominals) {
            auto it = r.m->nominals.find(i);
            if (it == r.m->nominals.end()) continue;
            if (!z[l.index(wl)][r.index(it->second)])
                out.push_back({"nom", "nominal '" + i + "' worlds are unrelated"});
        }
    }
    if (kind == BisimKind::MLC) {
        bool same_size = l.worlds.size() == r.worlds.size();
        if (!same_size || matching_size(z, l.worlds.size(), r.worlds.size()) != l.worlds.size())
            out.push_back({"bijection", "no bijection between W and W' inside the relation"});
    }
}

inline PairMatrix greatest_standard(const Indexed& l, const Indexed& r) {
    PairMatrix z(l.worlds.size(), std::vector<bool>(r.worlds.size(), false));
    for (std::size_t i = 0; i < l.worlds.size(); ++i)
        for (std::size_t j = 0; j < r.worlds.size(); ++j) z[i][j] = atom_ok(l, r, i, j);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < l.worlds.size(); ++i)
            for (std::size_t j = 0; j < r.worlds.size(); ++j)
                if (z[i][j] && (!zig_ok(l, r, z, i, j) || !zag_ok(l, r, z, i, j))) {
                    z[i][j] = false;
                    changed = true;
                }
    }
    return z;
}

}  // namespace bdetail

// Empty result means z is a bisimulation of the requested kind.
inline std::vector<Violation> check_bisim(BisimKind kind, const KripkeModel& m, const KripkeModel& m2,
                                          const BisimRelation& z) {
    bdetail::Indexed l(m), r(m2);
    bdetail::PairMatrix zm = bdetail::to_matrix(l, r, z);
    std::vector<Violation> out;
    bdetail::check_into(kind, l, r, zm, out);
    return out;
}

struct FindResult {
    enum class Outcome { Found, None, LimitExceeded } outcome = Outcome::None;
    BisimRelation relation;
};

namespace bdetail {

inline BisimRelation matrix_to_relation(const Indexed& l, const Indexed& r, const PairMatrix& z) {
    BisimRelation out;
    for (std::size_t i = 0; i < l.worlds.size(); ++i)
        for (std::size_t j = 0; j < r.worlds.size(); ++j)
            if (z[i][j]) out.pairs.emplace_back(l.worlds[i], r.worlds[j]);
    return out;
}

// Grow the required pairs inside the greatest standard bisimulation until Zig
// and Zag hold, picking the first fixpoint pair that repairs each defect.
inline PairMatrix close_within(const Indexed& l, const Indexed& r, const PairMatrix& gfp,
                               PairMatrix z) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < l.worlds.size(); ++i)
            for (std::size_t j = 0; j < r.worlds.size(); ++j) {
                if (!z[i][j]) continue;
                for (std::size_t v = 0; v < l.worlds.size(); ++v) {
                    if (!l.adj[i][v]) continue;
                    bool matched = false;
                    for (std::size_t v2 = 0; v2 < r.worlds.size() && !matched; ++v2)
                        if (z[v][v2] && r.adj[j][v2]) matched = true;
                    if (matched) continue;
                    for (std::size_t v2 = 0; v2 < r.worlds.size(); ++v2)
                        if (gfp[v][v2] && r.adj[j][v2]) {
                            z[v][v2] = true;
                            changed = true;
                            break;
                        }
                }
                for (std::size_t v2 = 0; v2 < r.worlds.size(); ++v2) {
                    if (!r.adj[j][v2]) continue;
                    bool matched = false;
                    for (std::size_t v = 0; v < l.worlds.size() && !matched; ++v)
                        if (z[v][v2] && l.adj[i][v]) matched = true;
                    if (matched) continue;
                    for (std::size_t v = 0; v < l.worlds.size(); ++v)
                        if (gfp[v][v2] && l.adj[i][v]) {
                            z[v][v2] = true;
                            changed = true;
                            break;
                        }
                }
            }
    }
    return z;
}

}  // namespace bdetail

// A bisimulation of the requested kind relating (w, w2), if one exists within
// the limits. The result always passes check_bisim.
inline FindResult find_bisim(BisimKind kind, const KripkeModel& m, const std::string& w,
                             const KripkeModel& m2, const std::string& w2, SearchLimits limits = {}) {
    bdetail::Indexed l(m), r(m2);
    std::size_t wi = l.index(w), wj = r.index(w2);
    bdetail::PairMatrix gfp = bdetail::greatest_standard(l, r);
    FindResult res;
    if (!gfp[wi][wj]) return res;  // every kind refines the standard conditions

    if (kind == BisimKind::Standard || kind == BisimKind::Hybrid) {
        bdetail::PairMatrix z(l.worlds.size(), std::vector<bool>(r.worlds.size(), false));
        z[wi][wj] = true;
        if (kind == BisimKind::Hybrid) {
            for (const auto& [i, wl] : m.nominals) {
                auto it = m2.nominals.find(i);
                if (it == m2.nominals.end()) continue;
                std::size_t a = l.index(wl), b = r.index(it->second);
                if (!gfp[a][b]) return res;  // the required pair fails Atom/Zig/Zag
                z[a][b] = true;
            }
        }
        z = bdetail::close_within(l, r, gfp, std::move(z));
        res.outcome = FindResult::Outcome::Found;
        res.relation = bdetail::matrix_to_relation(l, r, z);
        return res;
    }

    // Description / counting kinds: subset enumeration over the fixpoint.
    std::vector<std::pair<std::size_t, std::size_t>> pool;
    for (std::size_t i = 0; i < l.worlds.size(); ++i)
        for (std::size_t j = 0; j < r.worlds.size(); ++j)
            if (gfp[i][j] && !(i == wi && j == wj)) pool.emplace_back(i, j);
    std::uint64_t candidates = 0;
    const std::uint64_t total =
        pool.size() >= 63 ? UINT64_MAX : (1ull << pool.size());
    bdetail::PairMatrix z(l.worlds.size(), std::vector<bool>(r.worlds.size(), false));
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        if (++candidates > limits.max_candidates) {
            res.outcome = FindResult::Outcome::LimitExceeded;
            return res;
        }
        for (auto& row : z) std::fill(row.begin(), row.end(), false);
        z[wi][wj] = true;
        for (std::size_t p = 0; p < pool.size(); ++p)
            if (mask >> p & 1) z[pool[p].first][pool[p].second] = true;
        std::vector<Violation> violations;
        bdetail::check_into(kind, l, r, z, violations);
        if (violations.empty()) {
            res.outcome = FindResult::Outcome::Found;
            res.relation = bdetail::matrix_to_relation(l, r, z);
            return res;
        }
    }
    return res;
}

struct Disagreement {
    Formula formula;
    bool left = false, right = false;
};

// Evaluates each formula at both designated worlds; a bisimulation of the
// matching kind predicts an empty list.
inline std::vector<Disagreement> invariance_probe(BisimKind kind, const KripkeModel& m,
                                                  const std::string& w, const KripkeModel& m2,
                                                  const std::string& w2, const BisimRelation& z,
                                                  const std::vector<Formula>& formulas) {
    auto violations = check_bisim(kind, m, m2, z);
    if (!violations.empty())
        throw Error("invariance_probe: relation is not a " + std::string(kind_name(kind)) +
                    "-bisimulation: " + violations.front().detail);
    if (std::find(z.pairs.begin(), z.pairs.end(), std::make_pair(w, w2)) == z.pairs.end())
        throw Error("invariance_probe: designated worlds are unrelated");
    Dialect dialect = kind == BisimKind::DD      ? Dialect::MLDD
                      : kind == BisimKind::Hybrid ? Dialect::H_AT
                      : kind == BisimKind::MLC    ? Dialect::MLC
                                                  : Dialect::ML;
    Evaluator le(m), re(m2);
    std::vector<Disagreement> out;
    for (const Formula& f : formulas) {
        if (!dialect_admits(dialect, f))
            throw Error("invariance_probe: formula outside " + std::string(dialect_name(dialect)));
        bool a = le.holds(w, f), b = re.holds(w2, f);
        if (a != b) out.push_back({f, a, b});
    }
    return out;
}

}  // namespace bisim
}  // namespace mldd

#endif  // MLDD_BISIM_HPP
