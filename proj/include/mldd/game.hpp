// Game-based satisfiability for formulas whose descriptions are Boolean.
//
// The decision procedure works on the connective core ~ | <> @[] with true and
// false kept primitive; & -> [] are expanded by the entry points. Over the
// closure of the input (subformulas plus negations of non-negated members) it
// enumerates Hintikka sets: maximal subsets where ~g is in exactly when g is
// out, a disjunction is in exactly when one disjunct is, true is in and false
// is out.
//
// Play: Eloise opens with a family of slots, a multiset of Hintikka sets with
// the input formula in one of them. The opening commits each description to a
// realization count: absent (no slot carries it), unique (exactly one slot
// carries it, containing precisely the bodies of the @-formulas declared
// true), or plural (at least two slots carry it); an @-formula is declared
// true exactly when its description is uniquely realized with the body at the
// host, and all slots agree on the declarations. A relation on the slots
// respects <>: edges only where every formula in the target slot has its
// <>-form in the source.
//
// Abelard repeatedly picks a slot from the current frontier and a <>-formula
// in it whose modal depth fits the remaining budget (the input's depth minus
// turns already played); Eloise answers with a Hintikka set containing the
// argument, agreeing with the declarations, and <>-consistent with the
// attacked set. Absent descriptions may never appear in an answer; an answer
// carrying a uniquely realized description must be that description's host
// and wins immediately (the host's obligations were already discharged with a
// larger budget); plural descriptions flow freely. A player without a move
// loses. Eloise wins iff the input is satisfiable, and her strategy folds
// into a witness model, one world per opening slot plus one layer per turn.
//
// Answers never create new description hosts, so the declarations fixed by
// the opening stay binding; positions therefore memoize on (@-pattern, absent
// set, unique hosts, current set, turns).

#ifndef MLDD_GAME_HPP
#define MLDD_GAME_HPP

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mldd/eval.hpp"
#include "mldd/formula.hpp"
#include "mldd/kripke.hpp"
#include "mldd/oracle.hpp"  // for LimitExceeded
#include "mldd/print.hpp"

namespace mldd {
namespace game {

struct SearchLimits {
    std::uint64_t max_nodes = 50'000'000;
};

enum class Verdict { Win, Lose, LimitExceeded };

constexpr std::uint64_t kUniverseCap = 1u << 20;

// Membership bit-vector over the canonical ordering of the closure.
struct Bits {
    std::uint64_t lo = 0, hi = 0;

    void set(unsigned i) { (i < 64 ? lo : hi) |= 1ull << (i & 63); }
    bool test(unsigned i) const { return ((i < 64 ? lo : hi) >> (i & 63)) & 1; }
    bool none() const { return lo == 0 && hi == 0; }
    bool any() const { return !none(); }
    friend Bits operator&(Bits a, Bits b) { return Bits{a.lo & b.lo, a.hi & b.hi}; }
    friend Bits operator|(Bits a, Bits b) { return Bits{a.lo | b.lo, a.hi | b.hi}; }
    friend bool operator==(Bits a, Bits b) { return a.lo == b.lo && a.hi == b.hi; }
    friend bool operator!=(Bits a, Bits b) { return !(a == b); }
    friend bool operator<(Bits a, Bits b) { return a.hi != b.hi ? a.hi < b.hi : a.lo < b.lo; }
};

inline Formula to_core(const Formula& f) {
    switch (f.kind()) {
        case Kind::Prop:
        case Kind::Top:
        case Kind::Bot:
            return f;
        case Kind::Not: return Formula::lnot(to_core(f.child(0)));
        case Kind::Or: return Formula::lor(to_core(f.child(0)), to_core(f.child(1)));
        case Kind::Diamond: return Formula::diamond(to_core(f.child(0)));
        case Kind::Dd: return Formula::dd(to_core(f.child(0)), to_core(f.child(1)));
        case Kind::And:
            return Formula::lnot(Formula::lor(Formula::lnot(to_core(f.child(0))),
                                              Formula::lnot(to_core(f.child(1)))));
        case Kind::Implies:
            return Formula::lor(Formula::lnot(to_core(f.child(0))), to_core(f.child(1)));
        case Kind::Box: return Formula::lnot(Formula::diamond(Formula::lnot(to_core(f.child(0)))));
        default: throw Error("game engine: formula outside the description dialect");
    }
}

struct ClosureSet {
    std::vector<Formula> members;  // canonical order, subterms first
};

// Precondition: f uses only ~ | <> @[] over atoms and true/false.
inline ClosureSet closure(const Formula& f) {
    std::vector<Formula> subs = subformulas(f);
    for (const Formula& g : subs)
        switch (g.kind()) {
            case Kind::Prop:
            case Kind::Top:
            case Kind::Bot:
            case Kind::Not:
            case Kind::Or:
            case Kind::Diamond:
            case Kind::Dd:
                break;
            default:
                throw Error("closure: expand &, -> and [] first (core connectives are ~ | <> @[])");
        }
    std::vector<Formula> members = subs;
    for (const Formula& g : subs)
        if (g.kind() != Kind::Not) members.push_back(Formula::lnot(g));
    detail::sort_unique(members);
    return ClosureSet{std::move(members)};
}

namespace gdetail {

// Closure indexed for bit-vector work, with the Hintikka universe.
struct Tableau {
    Formula root;  // core form
    std::vector<Formula> cl;
    std::unordered_map<Formula, unsigned, FormulaHash> index;
    unsigned phi = 0;       // index of root
    unsigned md_total = 0;  // modal depth of root

    enum class Rule { FreeBit, ForcedTrue, ForcedFalse, Negation, Disjunction };
    struct Plan {
        Rule rule;
        unsigned a = 0, b = 0;
    };
    std::vector<Plan> plan;          // membership evaluation, cl order
    std::vector<unsigned> skeleton;  // cl indices of the free bits

    std::vector<unsigned> dd_members;  // cl indices of descriptions
    Bits dd_mask;
    struct AtAtom {
        unsigned at, desc, body;
    };
    std::vector<AtAtom> at_atoms;
    Bits at_mask;
    struct DiaAtom {
        unsigned dia, arg;
        unsigned depth;  // modal depth of the <>-formula itself
    };
    std::vector<DiaAtom> dia_atoms;

    std::vector<Bits> universe;        // all Hintikka sets, ascending bit-vectors
    std::vector<Bits> forbidden_args;  // per set: <>-arguments no successor set may contain
    std::unordered_map<std::uint64_t, std::vector<unsigned>> by_bits;

    explicit Tableau(const Formula& raw) {
        root = to_core(raw);
        md_total = modal_depth(root);
        ClosureSet cs = closure(root);
        cl = std::move(cs.members);
        if (cl.size() > 128) throw LimitExceeded("game engine: closure exceeds 128 formulas");
        for (unsigned i = 0; i < cl.size(); ++i) index.emplace(cl[i], i);
        phi = index.at(root);

        for (unsigned i = 0; i < cl.size(); ++i) {
            const Formula& g = cl[i];
            switch (g.kind()) {
                case Kind::Top: plan.push_back({Rule::ForcedTrue, 0, 0}); break;
                case Kind::Bot: plan.push_back({Rule::ForcedFalse, 0, 0}); break;
                case Kind::Not: plan.push_back({Rule::Negation, index.at(g.child(0)), 0}); break;
                case Kind::Or:
                    plan.push_back({Rule::Disjunction, index.at(g.child(0)), index.at(g.child(1))});
                    break;
                default:
                    plan.push_back({Rule::FreeBit, static_cast<unsigned>(skeleton.size()), 0});
                    skeleton.push_back(i);
                    break;
            }
        }

        for (const Formula& d : dd_set(root)) {
            unsigned i = index.at(d);
            dd_members.push_back(i);
            dd_mask.set(i);
        }
        for (unsigned i = 0; i < cl.size(); ++i) {
            const Formula& g = cl[i];
            if (g.kind() == Kind::Dd) {
                at_atoms.push_back({i, index.at(g.child(0)), index.at(g.child(1))});
                at_mask.set(i);
            } else if (g.kind() == Kind::Diamond) {
                dia_atoms.push_back({i, index.at(g.child(0)), g.modal_depth()});
            }
        }

        if (skeleton.size() > 63 || (1ull << skeleton.size()) > kUniverseCap)
            throw LimitExceeded("game engine: Hintikka universe too large");
        universe.reserve(1ull << skeleton.size());
        for (std::uint64_t assignment = 0; assignment < (1ull << skeleton.size()); ++assignment)
            universe.push_back(build_set(assignment));
        std::sort(universe.begin(), universe.end());
        forbidden_args.resize(universe.size());
        for (std::size_t u = 0; u < universe.size(); ++u) {
            Bits barred;
            for (const auto& d : dia_atoms)
                if (!universe[u].test(d.dia)) barred.set(d.arg);
            forbidden_args[u] = barred;
        }
        by_bits.reserve(universe.size());
        for (unsigned u = 0; u < universe.size(); ++u) by_bits[key(universe[u])].push_back(u);
    }

    static std::uint64_t key(Bits b) { return b.lo * 0x9e3779b97f4a7c15ull ^ b.hi; }

    bool in_universe(Bits b, unsigned& out) const {
        auto it = by_bits.find(key(b));
        if (it == by_bits.end()) return false;
        for (unsigned u : it->second)
            if (universe[u] == b) {
                out = u;
                return true;
            }
        return false;
    }

    Bits build_set(std::uint64_t assignment) const {
        Bits b;
        for (unsigned i = 0; i < cl.size(); ++i) {
            bool member = false;
            switch (plan[i].rule) {
                case Rule::FreeBit: member = assignment >> plan[i].a & 1; break;
                case Rule::ForcedTrue: member = true; break;
                case Rule::ForcedFalse: member = false; break;
                case Rule::Negation: member = !b.test(plan[i].a); break;
                case Rule::Disjunction: member = b.test(plan[i].a) || b.test(plan[i].b); break;
            }
            if (member) b.set(i);
        }
        return b;
    }

    std::vector<Formula> formulas_of(Bits b) const {
        std::vector<Formula> out;
        for (unsigned i = 0; i < cl.size(); ++i)
            if (b.test(i)) out.push_back(cl[i]);
        return out;
    }

    // Edge from universe[a] to universe[b] is <>-coherent.
    bool edge_ok(unsigned a, unsigned b) const { return (universe[b] & forbidden_args[a]).none(); }
};

inline std::string digest(Bits b) {
    char buf[36];
    std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(b.hi),
                  static_cast<unsigned long long>(b.lo));
    return buf;
}

struct MemoKey {
    Bits alpha;
    Bits absent;                  // descriptions barred from answers
    std::vector<Bits> t1_hosts;   // hosts of uniquely realized descriptions
    Bits h;
    unsigned turn;

    bool operator==(const MemoKey& o) const {
        return turn == o.turn && h == o.h && alpha == o.alpha && absent == o.absent &&
               t1_hosts == o.t1_hosts;
    }
};

struct MemoKeyHash {
    std::size_t operator()(const MemoKey& k) const {
        std::uint64_t h = 1469598103934665603ull;
        auto mix = [&h](std::uint64_t v) {
            h ^= v;
            h *= 1099511628211ull;
        };
        for (const Bits& b : k.t1_hosts) {
            mix(b.lo);
            mix(b.hi);
        }
        mix(k.alpha.lo);
        mix(k.alpha.hi);
        mix(k.absent.lo);
        mix(k.absent.hi);
        mix(k.h.lo);
        mix(k.h.hi);
        mix(k.turn);
        return static_cast<std::size_t>(h);
    }
};

struct MemoEntry {
    bool win = false;
    std::vector<std::pair<unsigned, Bits>> responses;  // dia-atom index -> chosen set
};

}  // namespace gdetail

// Recorded winning strategy: the opening family plus Eloise's chosen response
// for every reachable attack. Digests identify Hintikka sets by their
// membership bit-vector (hex, high word first).
struct Strategy {
    std::vector<Formula> closure_members;
    std::vector<Bits> family;
    std::size_t phi_host = 0;  // index into family
    struct Step {
        unsigned turn;
        Bits configuration;
        Formula attack;
        Bits response;
    };
    std::vector<Step> steps;
    unsigned deepest_turn = 0;  // Abelard turns answered along the deepest line

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["closure"] = nlohmann::json::array();
        for (const Formula& g : closure_members) j["closure"].push_back(print(g));
        j["family"] = nlohmann::json::array();
        for (Bits b : family) j["family"].push_back(gdetail::digest(b));
        j["formula_host"] = gdetail::digest(family.at(phi_host));
        j["responses"] = nlohmann::json::array();
        for (const auto& s : steps)
            j["responses"].push_back({{"turn", s.turn},
                                      {"configuration", gdetail::digest(s.configuration)},
                                      {"attack", print(s.attack)},
                                      {"response", gdetail::digest(s.response)}});
        return j;
    }
};

class GameSolver {
public:
    explicit GameSolver(Formula f, SearchLimits limits = {}) : raw_(std::move(f)), limits_(limits) {
        if (!dialect_admits(Dialect::MLDD, raw_)) throw Error("game engine: formula outside ML(DD)");
        if (!is_boolean_dd(raw_)) throw Error("game engine: only Boolean descriptions are supported");
    }

    Verdict solve() {
        try {
            tableau_.emplace(raw_);
            return search() ? Verdict::Win : Verdict::Lose;
        } catch (const LimitExceeded&) {
            return Verdict::LimitExceeded;
        }
    }

    const Strategy& strategy() const { return strategy_; }

    // Fold the recorded strategy into a model: one world per opening slot and
    // per (turn, set) reached, edges wherever <>-coherence allows them AND the
    // target sits on the next layer or on layer zero. Deeper or same-layer
    // targets may carry diamond claims that were never discharged (the turn
    // budget had run out), and an edge onto them can break a box formula at
    // the source; layer-zero sets discharged every claim, so they stay safe
    // targets from anywhere. Valuation is read off the sets; the designated
    // start world hosts the input formula.
    std::pair<KripkeModel, std::string> extract_model() const {
        if (!won_) throw Error("extract_model: no winning strategy recorded");
        const auto& t = *tableau_;
        std::vector<std::vector<Bits>> layers;
        layers.push_back(strategy_.family);
        for (unsigned k = 0; k < t.md_total; ++k) {
            std::vector<Bits> next;
            for (Bits h : layers[k]) {
                for (std::size_t d = 0; d < t.dia_atoms.size(); ++d) {
                    const auto& dia = t.dia_atoms[d];
                    if (!h.test(dia.dia) || dia.depth > t.md_total - k) continue;
                    Bits resp = lookup_response(h, k, static_cast<unsigned>(d));
                    if (std::find(strategy_.family.begin(), strategy_.family.end(), resp) ==
                        strategy_.family.end())
                        next.push_back(resp);
                }
            }
            std::sort(next.begin(), next.end());
            next.erase(std::unique(next.begin(), next.end()), next.end());
            layers.push_back(std::move(next));
        }

        KripkeModel m;
        std::vector<std::pair<unsigned, Bits>> worlds;
        for (unsigned k = 0; k < layers.size(); ++k)
            for (std::size_t i = 0; i < layers[k].size(); ++i) {
                m.worlds.push_back("w" + std::to_string(k) + "_" + std::to_string(i));
                worlds.emplace_back(k, layers[k][i]);
            }
        for (std::size_t a = 0; a < worlds.size(); ++a) {
            unsigned ua;
            if (!t.in_universe(worlds[a].second, ua)) throw Error("internal: world outside universe");
            for (std::size_t b = 0; b < worlds.size(); ++b) {
                if (worlds[b].first != 0 && worlds[b].first != worlds[a].first + 1) continue;
                if ((worlds[b].second & t.forbidden_args[ua]).none())
                    m.relation.emplace_back(m.worlds[a], m.worlds[b]);
            }
        }
        for (unsigned i = 0; i < t.cl.size(); ++i) {
            if (t.cl[i].kind() != Kind::Prop) continue;
            std::vector<std::string> ws;
            for (std::size_t a = 0; a < worlds.size(); ++a)
                if (worlds[a].second.test(i)) ws.push_back(m.worlds[a]);
            if (!ws.empty()) m.valuation[t.cl[i].name()] = std::move(ws);
        }
        // layer-0 worlds follow the slot order, so the host's slot index is
        // its world index
        std::string start = m.worlds.at(strategy_.phi_host);
        return {std::move(m), std::move(start)};
    }

private:
    Formula raw_;
    SearchLimits limits_;
    std::optional<gdetail::Tableau> tableau_;
    bool won_ = false;
    Strategy strategy_;

    std::uint64_t nodes_ = 0;
    std::unordered_map<gdetail::MemoKey, gdetail::MemoEntry, gdetail::MemoKeyHash> memo_;

    // declaration context during search
    Bits alpha_;
    Bits absent_;                  // descriptions realized nowhere
    Bits unique_;                  // descriptions realized exactly once
    std::vector<Bits> t1_hosts_;  // their host slots, one per block

    void charge() {
        if (++nodes_ > limits_.max_nodes) throw LimitExceeded("game search budget exhausted");
    }

    Bits lookup_response(Bits h, unsigned turn, unsigned dia_index) const {
        gdetail::MemoKey key{alpha_, absent_, t1_hosts_, h, turn};
        auto it = memo_.find(key);
        if (it != memo_.end())
            for (const auto& [d, resp] : it->second.responses)
                if (d == dia_index) return resp;
        throw Error("internal: strategy lookup miss");
    }

    bool host_ok(Bits s, unsigned desc, Bits alpha) const {
        const auto& t = *tableau_;
        if (!s.test(desc)) return false;
        for (const auto& at : t.at_atoms)
            if (at.desc == desc && alpha.test(at.at) != s.test(at.body)) return false;
        return true;
    }

    bool search() {
        const auto& t = *tableau_;
        const unsigned at_count = static_cast<unsigned>(t.at_atoms.size());
        for (std::uint64_t alpha_bits = 0; alpha_bits < (1ull << at_count); ++alpha_bits) {
            Bits alpha;
            for (unsigned j = 0; j < at_count; ++j)
                if (alpha_bits >> j & 1) alpha.set(t.at_atoms[j].at);
            std::vector<unsigned> candidates;
            for (unsigned u = 0; u < t.universe.size(); ++u) {
                charge();
                if ((t.universe[u] & t.at_mask) == alpha) candidates.push_back(u);
            }
            if (candidates.empty()) continue;

            // Descriptions with a true @-formula must be uniquely realized;
            // the rest choose between absent, unique and plural.
            Bits forced_unique;
            for (const auto& at : t.at_atoms)
                if (alpha.test(at.at)) forced_unique.set(at.desc);
            std::vector<unsigned> free_descs;
            for (unsigned d : t.dd_members)
                if (!forced_unique.test(d)) free_descs.push_back(d);

            std::uint64_t combos = 1;
            for (std::size_t i = 0; i < free_descs.size(); ++i) combos *= 3;
            for (std::uint64_t code = 0; code < combos; ++code) {
                Bits absent, unique = forced_unique, plural;
                std::uint64_t v = code;
                for (unsigned d : free_descs) {
                    switch (v % 3) {
                        case 0: absent.set(d); break;
                        case 1: unique.set(d); break;
                        default: plural.set(d); break;
                    }
                    v /= 3;
                }
                if (try_declaration(alpha, candidates, absent, unique, plural)) return true;
            }
        }
        return false;
    }

    bool try_declaration(Bits alpha, const std::vector<unsigned>& candidates, Bits absent, Bits unique,
                         Bits plural) {
        const auto& t = *tableau_;
        std::vector<unsigned> allowed;
        for (unsigned u : candidates)
            if ((t.universe[u] & absent).none()) allowed.push_back(u);
        for (unsigned h0 : allowed) {
            Bits s0 = t.universe[h0];
            if (!s0.test(t.phi)) continue;
            Bits d0 = s0 & unique;
            bool ok = true;
            for (unsigned d : t.dd_members)
                if (d0.test(d) && !host_ok(s0, d, alpha)) ok = false;
            if (!ok) continue;
            std::vector<unsigned> rest;
            for (unsigned d : t.dd_members)
                if (unique.test(d) && !d0.test(d)) rest.push_back(d);
            std::vector<unsigned> assignment(rest.size(), 1);
            if (enumerate_partitions(alpha, allowed, h0, absent, unique, plural, rest, assignment, 0,
                                     0))
                return true;
        }
        return false;
    }

    bool enumerate_partitions(Bits alpha, const std::vector<unsigned>& allowed, unsigned h0,
                              Bits absent, Bits unique, Bits plural, const std::vector<unsigned>& rest,
                              std::vector<unsigned>& assignment, std::size_t pos, unsigned blocks) {
        if (pos == rest.size())
            return try_blocks(alpha, allowed, h0, absent, unique, plural, rest, assignment, blocks);
        for (unsigned id = 1; id <= blocks + 1 && id <= rest.size(); ++id) {
            assignment[pos] = id;
            if (enumerate_partitions(alpha, allowed, h0, absent, unique, plural, rest, assignment,
                                     pos + 1, std::max(blocks, id)))
                return true;
        }
        return false;
    }

    bool try_blocks(Bits alpha, const std::vector<unsigned>& allowed, unsigned h0, Bits absent,
                    Bits unique, Bits plural, const std::vector<unsigned>& rest,
                    const std::vector<unsigned>& assignment, unsigned blocks) {
        const auto& t = *tableau_;
        std::vector<Bits> block_bits(blocks);
        for (std::size_t i = 0; i < rest.size(); ++i) block_bits[assignment[i] - 1].set(rest[i]);
        for (const Bits& bb : block_bits)
            if (bb.none()) return false;  // partition ids must all be used

        std::vector<std::vector<unsigned>> choices(blocks);
        for (unsigned b = 0; b < blocks; ++b) {
            for (unsigned u : allowed) {
                charge();
                if ((t.universe[u] & unique) != block_bits[b]) continue;
                bool ok = true;
                for (unsigned d : t.dd_members)
                    if (block_bits[b].test(d) && !host_ok(t.universe[u], d, alpha)) ok = false;
                if (ok) choices[b].push_back(u);
            }
            if (choices[b].empty()) return false;
        }
        std::vector<unsigned> pick(blocks, 0);
        while (true) {
            std::vector<unsigned> base{h0};
            for (unsigned b = 0; b < blocks; ++b) base.push_back(choices[b][pick[b]]);
            if (try_family(alpha, allowed, absent, unique, plural, base)) return true;
            unsigned b = 0;
            while (b < blocks && ++pick[b] == choices[b].size()) pick[b++] = 0;
            if (b == blocks) return false;
        }
    }

    bool try_family(Bits alpha, const std::vector<unsigned>& allowed, Bits absent, Bits unique,
                    Bits plural, const std::vector<unsigned>& base) {
        const auto& t = *tableau_;
        alpha_ = alpha;
        absent_ = absent;
        unique_ = unique;
        t1_hosts_.clear();
        for (unsigned u : base)
            if ((t.universe[u] & unique).any()) t1_hosts_.push_back(t.universe[u]);
        std::sort(t1_hosts_.begin(), t1_hosts_.end());

        for (unsigned u : base)
            if (!survive(t.universe[u], 0)) return false;

        // Plural descriptions need at least two carrying slots; top up with
        // surviving filler slots free of uniquely realized descriptions.
        std::vector<Bits> slots;
        for (unsigned u : base) slots.push_back(t.universe[u]);
        for (unsigned d : t.dd_members) {
            if (!plural.test(d)) continue;
            int have = 0;
            for (const Bits& s : slots) have += s.test(d);
            while (have < 2) {
                bool found = false;
                for (unsigned u : allowed) {
                    charge();
                    Bits s = t.universe[u];
                    if (!s.test(d) || (s & unique).any()) continue;
                    if (!survive(s, 0)) continue;
                    slots.push_back(s);
                    ++have;
                    found = true;
                    break;
                }
                if (!found) return false;
            }
        }
        record_family(slots);
        return true;
    }

    void record_family(const std::vector<Bits>& slots) {
        const auto& t = *tableau_;
        won_ = true;
        strategy_.closure_members = t.cl;
        strategy_.family = slots;  // multiset: the formula's host sits first
        strategy_.phi_host = 0;
        strategy_.steps.clear();
        strategy_.deepest_turn = 0;
        for (const auto& [key, entry] : memo_) {
            if (!entry.win ||
                !(key.alpha == alpha_ && key.absent == absent_ && key.t1_hosts == t1_hosts_))
                continue;
            for (const auto& [d, resp] : entry.responses) {
                strategy_.steps.push_back({key.turn, key.h, t.cl[t.dia_atoms[d].dia], resp});
                strategy_.deepest_turn = std::max(strategy_.deepest_turn, key.turn + 1);
            }
        }
        std::sort(strategy_.steps.begin(), strategy_.steps.end(), [](const auto& a, const auto& b) {
            if (a.turn != b.turn) return a.turn < b.turn;
            if (a.configuration != b.configuration) return a.configuration < b.configuration;
            return Formula::compare(a.attack, b.attack) < 0;
        });
    }

    // Can Eloise answer every eligible attack on h after `turn` Abelard turns?
    bool survive(Bits h, unsigned turn) {
        const auto& t = *tableau_;
        gdetail::MemoKey key{alpha_, absent_, t1_hosts_, h, turn};
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second.win;

        unsigned uh;
        if (!t.in_universe(h, uh)) throw Error("internal: configuration outside universe");
        Bits barred = t.forbidden_args[uh];
        gdetail::MemoEntry entry;
        entry.win = true;
        for (std::size_t d = 0; d < t.dia_atoms.size() && entry.win; ++d) {
            const auto& dia = t.dia_atoms[d];
            if (!h.test(dia.dia) || dia.depth > t.md_total - turn) continue;
            bool answered = false;
            for (unsigned u = 0; u < t.universe.size() && !answered; ++u) {
                charge();
                Bits cand = t.universe[u];
                if (!cand.test(dia.arg)) continue;
                if ((cand & t.at_mask) != alpha_) continue;
                if ((cand & barred).any()) continue;
                if ((cand & absent_).any()) continue;
                if ((cand & unique_).any()) {
                    // An answer carrying a uniquely realized description must
                    // be its host slot; reaching it ends the game in Eloise's
                    // favour.
                    if (std::find(t1_hosts_.begin(), t1_hosts_.end(), cand) == t1_hosts_.end())
                        continue;
                    answered = true;
                } else if (survive(cand, turn + 1)) {
                    answered = true;
                }
                if (answered) entry.responses.emplace_back(static_cast<unsigned>(d), cand);
            }
            if (!answered) {
                entry.win = false;
                entry.responses.clear();
            }
        }
        return memo_.emplace(key, std::move(entry)).first->second.win;
    }
};

inline Verdict eloise_wins(const Formula& f, SearchLimits limits = {}) {
    GameSolver solver(std::move(f), limits);
    return solver.solve();
}

// Every Hintikka set of f, each as a canonically ordered formula list,
// enumerated in ascending bit-vector order.
inline std::vector<std::vector<Formula>> hintikka_sets(const Formula& f) {
    gdetail::Tableau t(to_core(f));
    std::vector<std::vector<Formula>> out;
    out.reserve(t.universe.size());
    for (Bits b : t.universe) out.push_back(t.formulas_of(b));
    return out;
}

// One position of the game, as data: the family played in the opening move,
// a relation on it, the frontier Abelard may attack, and his turn count.
struct GameConfiguration {
    std::vector<std::vector<Formula>> family;
    std::vector<std::pair<std::size_t, std::size_t>> family_relation;
    std::vector<std::size_t> current;
    unsigned abelard_turns = 0;
};

// Streams Eloise's legal opening moves: every admissible family, each paired
// with every subset of its maximal <>-coherent relation (empty subset first).
// An empty stream means Eloise cannot open at all.
class InitialMoves {
public:
    explicit InitialMoves(const Formula& f) : tableau_(f) {
        if (!is_boolean_dd(f)) throw Error("initial moves: only Boolean descriptions are supported");
        collect_families();
    }

    bool next(GameConfiguration& out) {
        while (family_index_ < families_.size()) {
            const auto& fam = families_[family_index_];
            if (fam.max_rel.size() >= 63 || (rel_counter_ >> fam.max_rel.size()) & 1) {
                ++family_index_;
                rel_counter_ = 0;
                continue;
            }
            out.family.clear();
            for (Bits b : fam.members) out.family.push_back(tableau_.formulas_of(b));
            out.family_relation.clear();
            for (std::size_t i = 0; i < fam.max_rel.size(); ++i)
                if (rel_counter_ >> i & 1) out.family_relation.push_back(fam.max_rel[i]);
            out.current.resize(fam.members.size());
            for (std::size_t i = 0; i < out.current.size(); ++i) out.current[i] = i;
            out.abelard_turns = 0;
            ++rel_counter_;
            return true;
        }
        return false;
    }

private:
    struct Family {
        std::vector<Bits> members;
        std::vector<std::pair<std::size_t, std::size_t>> max_rel;
    };

    gdetail::Tableau tableau_;
    std::vector<Family> families_;
    std::size_t family_index_ = 0;
    std::uint64_t rel_counter_ = 0;

    void collect_families() {
        const auto& t = tableau_;
        std::set<std::vector<Bits>> seen;
        const unsigned at_count = static_cast<unsigned>(t.at_atoms.size());
        for (std::uint64_t alpha_bits = 0; alpha_bits < (1ull << at_count); ++alpha_bits) {
            Bits alpha;
            for (unsigned j = 0; j < at_count; ++j)
                if (alpha_bits >> j & 1) alpha.set(t.at_atoms[j].at);
            std::vector<unsigned> candidates;
            for (unsigned u = 0; u < t.universe.size(); ++u) {
                Bits s = t.universe[u];
                if ((s & t.at_mask) != alpha) continue;
                bool ok = true;
                for (unsigned j = 0; j < at_count && ok; ++j) {
                    const auto& at = t.at_atoms[j];
                    if (!(alpha_bits >> j & 1) && s.test(at.desc) && s.test(at.body)) ok = false;
                }
                if (ok) candidates.push_back(u);
            }
            for (unsigned host : candidates) {
                if (!t.universe[host].test(t.phi)) continue;
                Bits d0 = t.universe[host] & t.dd_mask;
                std::vector<unsigned> rest;
                for (unsigned d : t.dd_members)
                    if (!d0.test(d)) rest.push_back(d);
                std::vector<unsigned> assignment(rest.size(), 0);
                collect_partitions(alpha, candidates, host, rest, assignment, 0, 0, seen);
            }
        }
    }

    void collect_partitions(Bits alpha, const std::vector<unsigned>& candidates, unsigned host,
                            const std::vector<unsigned>& rest, std::vector<unsigned>& assignment,
                            std::size_t pos, unsigned blocks, std::set<std::vector<Bits>>& seen) {
        const auto& t = tableau_;
        if (pos < rest.size()) {
            for (unsigned id = 0; id <= blocks + 1 && id <= rest.size(); ++id) {
                assignment[pos] = id;
                collect_partitions(alpha, candidates, host, rest, assignment, pos + 1,
                                   std::max(blocks, id), seen);
            }
            return;
        }
        std::vector<Bits> block_bits(blocks);
        for (std::size_t i = 0; i < rest.size(); ++i)
            if (assignment[i] > 0) block_bits[assignment[i] - 1].set(rest[i]);
        for (const Bits& bb : block_bits)
            if (bb.none()) return;
        std::vector<std::vector<unsigned>> choices(blocks);
        for (unsigned b = 0; b < blocks; ++b) {
            for (unsigned u : candidates)
                if ((t.universe[u] & t.dd_mask) == block_bits[b]) choices[b].push_back(u);
            if (choices[b].empty()) return;
        }
        std::vector<unsigned> pick(blocks, 0);
        while (true) {
            std::vector<unsigned> member_ids{host};
            for (unsigned b = 0; b < blocks; ++b) member_ids.push_back(choices[b][pick[b]]);
            std::vector<Bits> members;
            for (unsigned u : member_ids) members.push_back(t.universe[u]);
            std::sort(members.begin(), members.end());
            members.erase(std::unique(members.begin(), members.end()), members.end());

            bool witnessed = true;
            for (std::size_t j = 0; j < t.at_atoms.size() && witnessed; ++j) {
                const auto& at = t.at_atoms[j];
                if (!alpha.test(at.at)) continue;
                bool found = false;
                for (const Bits& m : members)
                    if (m.test(at.desc) && m.test(at.body)) found = true;
                witnessed = found;
            }
            if (witnessed && seen.insert(members).second) {
                Family fam;
                fam.members = members;
                for (std::size_t a = 0; a < members.size(); ++a) {
                    unsigned ua;
                    if (!t.in_universe(members[a], ua)) continue;
                    for (std::size_t b = 0; b < members.size(); ++b)
                        if ((members[b] & t.forbidden_args[ua]).none()) fam.max_rel.emplace_back(a, b);
                }
                families_.push_back(std::move(fam));
            }
            unsigned b = 0;
            while (b < blocks && ++pick[b] == choices[b].size()) pick[b++] = 0;
            if (b == blocks) return;
        }
    }
};

struct SatResult {
    enum class Outcome { Sat, Unsat, LimitExceeded } outcome = Outcome::Unsat;
    KripkeModel model;
    std::string world;
};

// Decides satisfiability for Boolean-description inputs; a Sat answer always
// carries a verified witness.
inline SatResult sat_boolean_dd(const Formula& f, SearchLimits limits = {}) {
    GameSolver solver(f, limits);
    Verdict v = solver.solve();
    SatResult res;
    if (v == Verdict::LimitExceeded) {
        res.outcome = SatResult::Outcome::LimitExceeded;
        return res;
    }
    if (v == Verdict::Lose) {
        res.outcome = SatResult::Outcome::Unsat;
        return res;
    }
    auto [model, world] = solver.extract_model();
    if (!satisfies(model, world, f)) throw Error("internal: game witness failed verification");
    res.outcome = SatResult::Outcome::Sat;
    res.model = std::move(model);
    res.world = std::move(world);
    return res;
}

}  // namespace game
}  // namespace mldd

#endif  // MLDD_GAME_HPP
