// Inter-logic translations:
//   hybrid_to_dd      nominals become fresh props pinned to single worlds
//   dd_to_mlc         @[d]b via two exactly-one counts
//   dd_to_mlc_via_diff  @[d]b via somewhere/difference, expanded into counts
//   univ_to_dd        A/E via a trash world, equisatisfiable
//   mlc_to_dd_linear  counts via chains, equivalent on strict total orders

#ifndef MLDD_TRANSLATE_HPP
#define MLDD_TRANSLATE_HPP

#include <cstdint>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "mldd/formula.hpp"
#include "mldd/print.hpp"

namespace mldd {

// Hands out names that collide neither with the reserved set nor with each
// other: the base name itself if free, else base1, base2, ...
class FreshSymbolSource {
public:
    FreshSymbolSource() = default;
    explicit FreshSymbolSource(std::set<std::string> reserved) : reserved_(std::move(reserved)) {}

    static FreshSymbolSource for_formula(const Formula& f) {
        std::set<std::string> reserved;
        for (const auto& p : prop_names(f)) reserved.insert(p);
        for (const auto& i : nominal_names(f)) reserved.insert(i);
        return FreshSymbolSource(std::move(reserved));
    }

    std::string fresh(const std::string& base) {
        std::string name = base;
        for (std::uint64_t k = 1; reserved_.count(name) != 0; ++k) name = base + std::to_string(k);
        reserved_.insert(name);
        return name;
    }

    void reserve(const std::string& name) { reserved_.insert(name); }

private:
    std::set<std::string> reserved_;
};

namespace detail {

// A lexically valid prop name derived from a formula's canonical print;
// long prints fall back to a hash digest.
inline std::string prop_name_for(const Formula& f) {
    std::string printed = print(f);
    if (printed.size() <= 24) {
        std::string out = "p_";
        for (char c : printed) {
            if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_')
                out += c;
            else
                out += '_';
        }
        return out;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "p_%016llx", static_cast<unsigned long long>(f.hash()));
    return buf;
}

}  // namespace detail

// Nominal simulation: each nominal i becomes a fresh prop p_i, @'i b becomes
// @[p_i] b, and the result is conjoined with @[p_i] true for every nominal so
// that each fresh prop is pinned to exactly one world.
inline Formula hybrid_to_dd(const Formula& f) {
    if (!dialect_admits(Dialect::H_AT, f)) throw Error("hybrid_to_dd: formula outside H(@)");
    FreshSymbolSource fresh = FreshSymbolSource::for_formula(f);
    std::map<std::string, std::string> prop_of;
    for (const std::string& i : nominal_names(f)) prop_of[i] = fresh.fresh("p_" + i);

    auto rec = [&prop_of](const Formula& g, const auto& self) -> Formula {
        switch (g.kind()) {
            case Kind::Nom: return Formula::prop(prop_of.at(g.name()));
            case Kind::Sat: return Formula::dd(Formula::prop(prop_of.at(g.name())), self(g.child(0), self));
            case Kind::Prop:
            case Kind::Top:
            case Kind::Bot: return g;
            case Kind::Not: return Formula::lnot(self(g.child(0), self));
            case Kind::And: return Formula::land(self(g.child(0), self), self(g.child(1), self));
            case Kind::Or: return Formula::lor(self(g.child(0), self), self(g.child(1), self));
            case Kind::Implies: return Formula::implies(self(g.child(0), self), self(g.child(1), self));
            case Kind::Diamond: return Formula::diamond(self(g.child(0), self));
            case Kind::Box: return Formula::box(self(g.child(0), self));
            default: throw Error("hybrid_to_dd: formula outside H(@)");
        }
    };
    Formula out = rec(f, rec);
    for (const auto& [i, p] : prop_of) out = Formula::land(out, Formula::dd(Formula::prop(p), Formula::top()));
    return out;
}

namespace detail {

template <typename DdRewrite>
Formula rewrite_dd_bottom_up(const Formula& f, const DdRewrite& rw) {
    switch (f.kind()) {
        case Kind::Prop:
        case Kind::Top:
        case Kind::Bot: return f;
        case Kind::Not: return Formula::lnot(rewrite_dd_bottom_up(f.child(0), rw));
        case Kind::And:
            return Formula::land(rewrite_dd_bottom_up(f.child(0), rw), rewrite_dd_bottom_up(f.child(1), rw));
        case Kind::Or:
            return Formula::lor(rewrite_dd_bottom_up(f.child(0), rw), rewrite_dd_bottom_up(f.child(1), rw));
        case Kind::Implies:
            return Formula::implies(rewrite_dd_bottom_up(f.child(0), rw),
                                    rewrite_dd_bottom_up(f.child(1), rw));
        case Kind::Diamond: return Formula::diamond(rewrite_dd_bottom_up(f.child(0), rw));
        case Kind::Box: return Formula::box(rewrite_dd_bottom_up(f.child(0), rw));
        case Kind::Dd:
            return rw(rewrite_dd_bottom_up(f.child(0), rw), rewrite_dd_bottom_up(f.child(1), rw));
        default: throw Error("translation: formula outside ML(DD)");
    }
}

}  // namespace detail

// @[d] b  ~>  E=1 d & E=1 (d & b), innermost descriptions first.
inline Formula dd_to_mlc(const Formula& f) {
    if (!dialect_admits(Dialect::MLDD, f)) throw Error("dd_to_mlc: formula outside ML(DD)");
    return detail::rewrite_dd_bottom_up(f, [](Formula d, Formula b) {
        return Formula::land(Formula::count_eq(1, d), Formula::count_eq(1, Formula::land(d, b)));
    });
}

// @[d] b  ~>  E (d & b & ~D d), with the somewhere and difference operators
// expanded into counting: E g as E>=1 g, D g as (g -> E>=2 g) & (~g -> E>=1 g).
inline Formula dd_to_mlc_via_diff(const Formula& f) {
    if (!dialect_admits(Dialect::MLDD, f)) throw Error("dd_to_mlc_via_diff: formula outside ML(DD)");
    auto somewhere = [](Formula g) { return Formula::count_ge(1, g); };
    auto difference = [](const Formula& g) {
        return Formula::land(Formula::implies(g, Formula::count_ge(2, g)),
                             Formula::implies(Formula::lnot(g), Formula::count_ge(1, g)));
    };
    return detail::rewrite_dd_bottom_up(f, [&](Formula d, Formula b) {
        return somewhere(Formula::land(Formula::land(d, b), Formula::lnot(difference(d))));
    });
}

// Chain of n occurrences of psi along <>: psi & <>(psi & <>(... psi)).
inline Formula chain_formula(const Formula& psi, std::uint64_t n) {
    if (n == 0) throw Error("chain_formula: n must be at least 1");
    Formula out = psi;
    for (std::uint64_t k = 1; k < n; ++k) out = Formula::land(psi, Formula::diamond(out));
    return out;
}

// E>=n g  ~>  <>g_n | @[g_n & ~<>g_n] true, bottom-up; E<= and E= are expanded
// into E>= first. Equivalent to the input at every world of every finite
// strict total order. E>=0 is vacuously true.
inline Formula mlc_to_dd_linear(const Formula& f) {
    if (!dialect_admits(Dialect::MLC, f)) throw Error("mlc_to_dd_linear: formula outside MLC");
    auto rec = [](const Formula& g, const auto& self) -> Formula {
        switch (g.kind()) {
            case Kind::Prop:
            case Kind::Top:
            case Kind::Bot: return g;
            case Kind::Not: return Formula::lnot(self(g.child(0), self));
            case Kind::And: return Formula::land(self(g.child(0), self), self(g.child(1), self));
            case Kind::Or: return Formula::lor(self(g.child(0), self), self(g.child(1), self));
            case Kind::Implies: return Formula::implies(self(g.child(0), self), self(g.child(1), self));
            case Kind::Diamond: return Formula::diamond(self(g.child(0), self));
            case Kind::Box: return Formula::box(self(g.child(0), self));
            case Kind::CountGe: {
                if (g.bound() == 0) return Formula::top();
                Formula chain = chain_formula(self(g.child(0), self), g.bound());
                return Formula::lor(
                    Formula::diamond(chain),
                    Formula::dd(Formula::land(chain, Formula::lnot(Formula::diamond(chain))),
                                Formula::top()));
            }
            default: throw Error("mlc_to_dd_linear: unhandled node");
        }
    };
    return rec(expand_count_sugar(f), rec);
}

// A/E elimination through a unique trash world: the input goes to negation
// normal form, tau maps E g to @[p_g](tau(g) & ~s) with one fresh prop per
// distinct g and A g to @[s | ~tau(g)] true, and the result is conjoined with
// ~s & @[s] true & @[<>s] s. Satisfiable exactly when the input is; a model
// gains or loses the single s-world.
inline Formula univ_to_dd(const Formula& f, FreshSymbolSource& fresh) {
    if (!dialect_admits(Dialect::ML_A, f)) throw Error("univ_to_dd: formula outside ML(A)");
    Formula g = nnf(f);
    std::string s = fresh.fresh("s");
    Formula s_prop = Formula::prop(s);
    std::map<Formula, std::string> name_of;  // fresh prop per distinct E-argument

    auto tau = [&](const Formula& h, const auto& self) -> Formula {
        switch (h.kind()) {
            case Kind::Prop:
            case Kind::Top:
            case Kind::Bot:
            case Kind::Not: return h;  // literals only, after nnf
            case Kind::And: return Formula::land(self(h.child(0), self), self(h.child(1), self));
            case Kind::Or: return Formula::lor(self(h.child(0), self), self(h.child(1), self));
            case Kind::Diamond: return Formula::diamond(self(h.child(0), self));
            case Kind::Box: return Formula::box(self(h.child(0), self));
            case Kind::Some: {
                const Formula& body = h.child(0);
                auto it = name_of.find(body);
                if (it == name_of.end())
                    it = name_of.emplace(body, fresh.fresh(detail::prop_name_for(body))).first;
                return Formula::dd(Formula::prop(it->second),
                                   Formula::land(self(body, self), Formula::lnot(s_prop)));
            }
            case Kind::Univ:
                return Formula::dd(Formula::lor(s_prop, Formula::lnot(self(h.child(0), self))),
                                   Formula::top());
            default: throw Error("univ_to_dd: unexpected node after nnf");
        }
    };
    Formula image = tau(g, tau);
    image = Formula::land(image, Formula::lnot(s_prop));
    image = Formula::land(image, Formula::dd(s_prop, Formula::top()));
    image = Formula::land(image, Formula::dd(Formula::diamond(s_prop), s_prop));
    return image;
}

inline Formula univ_to_dd(const Formula& f) {
    FreshSymbolSource fresh = FreshSymbolSource::for_formula(f);
    return univ_to_dd(f, fresh);
}

}  // namespace mldd

#endif  // MLDD_TRANSLATE_HPP
