// Formula AST shared by every component: one immutable node type covering the
// basic modal language plus definite descriptions @[d]b, hybrid nominals and
// satisfaction operators, counting operators, and the global A/E/D modalities.
//
// Formulas are handles to shared immutable nodes; all operations here are pure.
// Structural equality (with a precomputed hash as shortcut) is the equality
// used everywhere else in the library, and compare() gives the canonical total
// order: subterms sort strictly before the terms containing them.

#ifndef MLDD_FORMULA_HPP
#define MLDD_FORMULA_HPP

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mldd {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Kind : std::uint8_t {
    Prop,
    Nom,
    Top,
    Bot,
    Not,
    And,
    Or,
    Implies,
    Diamond,
    Box,
    Dd,       // @[child0] child1
    Sat,      // @'name child0
    CountGe,  // E>=n child0
    CountLe,
    CountEq,
    Univ,  // A
    Some,  // E
    Diff,  // D
};

class Formula {
public:
    Formula() = default;

    static Formula prop(std::string name) { return build(Kind::Prop, std::move(name), 0, {}, {}); }
    static Formula nom(std::string name) { return build(Kind::Nom, std::move(name), 0, {}, {}); }
    static Formula top() { return build(Kind::Top, {}, 0, {}, {}); }
    static Formula bot() { return build(Kind::Bot, {}, 0, {}, {}); }
    static Formula lnot(Formula f) { return build(Kind::Not, {}, 0, std::move(f), {}); }
    static Formula land(Formula a, Formula b) { return build(Kind::And, {}, 0, std::move(a), std::move(b)); }
    static Formula lor(Formula a, Formula b) { return build(Kind::Or, {}, 0, std::move(a), std::move(b)); }
    static Formula implies(Formula a, Formula b) {
        return build(Kind::Implies, {}, 0, std::move(a), std::move(b));
    }
    static Formula diamond(Formula f) { return build(Kind::Diamond, {}, 0, std::move(f), {}); }
    static Formula box(Formula f) { return build(Kind::Box, {}, 0, std::move(f), {}); }
    static Formula dd(Formula description, Formula body) {
        return build(Kind::Dd, {}, 0, std::move(description), std::move(body));
    }
    static Formula sat_at(std::string nominal, Formula body) {
        return build(Kind::Sat, std::move(nominal), 0, std::move(body), {});
    }
    static Formula count_ge(std::uint64_t n, Formula body) {
        return build(Kind::CountGe, {}, n, std::move(body), {});
    }
    static Formula count_le(std::uint64_t n, Formula body) {
        return build(Kind::CountLe, {}, n, std::move(body), {});
    }
    static Formula count_eq(std::uint64_t n, Formula body) {
        return build(Kind::CountEq, {}, n, std::move(body), {});
    }
    static Formula univ(Formula f) { return build(Kind::Univ, {}, 0, std::move(f), {}); }
    static Formula some(Formula f) { return build(Kind::Some, {}, 0, std::move(f), {}); }
    static Formula diff(Formula f) { return build(Kind::Diff, {}, 0, std::move(f), {}); }

    bool valid() const { return node_ != nullptr; }

    Kind kind() const;

    // Prop, Nom and Sat carry a name.
    const std::string& name() const;

    // CountGe/CountLe/CountEq carry a threshold.
    std::uint64_t bound() const;

    int arity() const;

    const Formula& child(int i = 0) const;

    // Number of AST nodes, this one included.
    std::uint32_t size() const;

    // Deepest nesting of Diamond/Box; descriptions, satisfaction operators,
    // counting and global operators pass the depth of their arguments through
    // without adding a level.
    unsigned modal_depth() const;

    std::uint64_t hash() const;

    bool operator==(const Formula& o) const;
    bool operator!=(const Formula& o) const { return !(*this == o); }
    bool operator<(const Formula& o) const { return compare(*this, o) < 0; }

    // Canonical total order: by size first, so proper subterms always precede
    // the terms they occur in; then by kind, payload, children.
    static int compare(const Formula& a, const Formula& b);

private:
    struct Node;

    static Formula build(Kind k, std::string name, std::uint64_t bound, Formula a, Formula b);

    std::shared_ptr<const Node> node_;
};

struct Formula::Node {
    Kind kind{};
    std::uint32_t size = 1;
    std::uint32_t md = 0;
    std::uint64_t n = 0;
    std::uint64_t hash = 0;
    std::string name;
    Formula kid0, kid1;

    void rehash() {
        std::uint64_t h = 1469598103934665603ull;
        auto mix = [&h](std::uint64_t v) {
            h ^= v;
            h *= 1099511628211ull;
        };
        mix(static_cast<std::uint64_t>(kind));
        mix(n);
        for (char c : name) mix(static_cast<unsigned char>(c));
        if (kid0.valid()) mix(kid0.hash());
        if (kid1.valid()) mix(kid1.hash());
        hash = h;
    }
};

inline Kind Formula::kind() const { return node_->kind; }
inline const std::string& Formula::name() const { return node_->name; }
inline std::uint64_t Formula::bound() const { return node_->n; }
inline int Formula::arity() const { return node_->kid1.valid() ? 2 : (node_->kid0.valid() ? 1 : 0); }
inline const Formula& Formula::child(int i) const { return i == 0 ? node_->kid0 : node_->kid1; }
inline std::uint32_t Formula::size() const { return node_->size; }
inline unsigned Formula::modal_depth() const { return node_->md; }
inline std::uint64_t Formula::hash() const { return node_->hash; }

inline bool Formula::operator==(const Formula& o) const {
    if (node_ == o.node_) return true;
    if (!node_ || !o.node_) return false;
    if (node_->hash != o.node_->hash) return false;
    return compare(*this, o) == 0;
}

inline int Formula::compare(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return 0;
    if (!a.node_) return -1;
    if (!b.node_) return 1;
    if (a.node_->size != b.node_->size) return a.node_->size < b.node_->size ? -1 : 1;
    if (a.node_->kind != b.node_->kind) return a.node_->kind < b.node_->kind ? -1 : 1;
    if (a.node_->n != b.node_->n) return a.node_->n < b.node_->n ? -1 : 1;
    if (int c = a.node_->name.compare(b.node_->name); c != 0) return c < 0 ? -1 : 1;
    if (int c = compare(a.node_->kid0, b.node_->kid0); c != 0) return c;
    return compare(a.node_->kid1, b.node_->kid1);
}

inline Formula Formula::build(Kind k, std::string name, std::uint64_t bound, Formula a, Formula b) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->name = std::move(name);
    n->n = bound;
    n->size = 1 + (a.valid() ? a.size() : 0) + (b.valid() ? b.size() : 0);
    unsigned md = std::max(a.valid() ? a.modal_depth() : 0u, b.valid() ? b.modal_depth() : 0u);
    n->md = md + (k == Kind::Diamond || k == Kind::Box ? 1 : 0);
    n->kid0 = std::move(a);
    n->kid1 = std::move(b);
    n->rehash();
    Formula f;
    f.node_ = std::move(n);
    return f;
}

struct FormulaHash {
    std::size_t operator()(const Formula& f) const { return static_cast<std::size_t>(f.hash()); }
};

inline unsigned modal_depth(const Formula& f) { return f.modal_depth(); }

namespace detail {

template <typename Fn>
void visit_subterms(const Formula& f, Fn&& fn) {
    fn(f);
    for (int i = 0; i < f.arity(); ++i) visit_subterms(f.child(i), fn);
}

inline void sort_unique(std::vector<Formula>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace detail

// All subterms of f (f included), deduplicated and in canonical order.
inline std::vector<Formula> subformulas(const Formula& f) {
    std::vector<Formula> out;
    detail::visit_subterms(f, [&](const Formula& g) { out.push_back(g); });
    detail::sort_unique(out);
    return out;
}

// The descriptions of every @[...] node occurring anywhere in f.
inline std::vector<Formula> dd_set(const Formula& f) {
    std::vector<Formula> out;
    detail::visit_subterms(f, [&](const Formula& g) {
        if (g.kind() == Kind::Dd) out.push_back(g.child(0));
    });
    detail::sort_unique(out);
    return out;
}

inline std::vector<std::string> prop_names(const Formula& f) {
    std::vector<std::string> out;
    detail::visit_subterms(f, [&](const Formula& g) {
        if (g.kind() == Kind::Prop) out.push_back(g.name());
    });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline std::vector<std::string> nominal_names(const Formula& f) {
    std::vector<std::string> out;
    detail::visit_subterms(f, [&](const Formula& g) {
        if (g.kind() == Kind::Nom || g.kind() == Kind::Sat) out.push_back(g.name());
    });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Purely propositional: no modal, description, hybrid, counting or global operator.
inline bool is_boolean(const Formula& f) {
    switch (f.kind()) {
        case Kind::Prop:
        case Kind::Top:
        case Kind::Bot:
            return true;
        case Kind::Not:
        case Kind::And:
        case Kind::Or:
        case Kind::Implies:
            for (int i = 0; i < f.arity(); ++i)
                if (!is_boolean(f.child(i))) return false;
            return true;
        default:
            return false;
    }
}

// Every description in f is free of Diamond, Box and nested @[...].
inline bool is_boolean_dd(const Formula& f) {
    auto clean = [](const Formula& d) {
        bool ok = true;
        detail::visit_subterms(d, [&](const Formula& g) {
            if (g.kind() == Kind::Diamond || g.kind() == Kind::Box || g.kind() == Kind::Dd) ok = false;
        });
        return ok;
    };
    for (const Formula& d : dd_set(f))
        if (!clean(d)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Dialects

enum class Dialect : std::uint8_t { ML, MLDD, H_AT, MLC, ML_A };

inline const char* dialect_name(Dialect d) {
    switch (d) {
        case Dialect::ML: return "ML";
        case Dialect::MLDD: return "MLDD";
        case Dialect::H_AT: return "H_AT";
        case Dialect::MLC: return "MLC";
        case Dialect::ML_A: return "ML_A";
    }
    return "?";
}

inline bool kind_in_dialect(Dialect d, Kind k) {
    switch (k) {
        case Kind::Prop:
        case Kind::Top:
        case Kind::Bot:
        case Kind::Not:
        case Kind::And:
        case Kind::Or:
        case Kind::Implies:
        case Kind::Diamond:
        case Kind::Box:
            return true;
        case Kind::Dd:
            return d == Dialect::MLDD;
        case Kind::Nom:
        case Kind::Sat:
            return d == Dialect::H_AT;
        case Kind::CountGe:
        case Kind::CountLe:
        case Kind::CountEq:
            return d == Dialect::MLC;
        case Kind::Univ:
        case Kind::Some:
        case Kind::Diff:
            return d == Dialect::ML_A;
    }
    return false;
}

inline bool dialect_admits(Dialect d, const Formula& f) {
    bool ok = true;
    detail::visit_subterms(f, [&](const Formula& g) { ok = ok && kind_in_dialect(d, g.kind()); });
    return ok;
}

// Most specific dialect admitting f, or nullopt when f mixes extensions.
inline std::optional<Dialect> classify_dialect(const Formula& f) {
    bool has_dd = false, has_hyb = false, has_cnt = false, has_glob = false;
    detail::visit_subterms(f, [&](const Formula& g) {
        switch (g.kind()) {
            case Kind::Dd: has_dd = true; break;
            case Kind::Nom:
            case Kind::Sat: has_hyb = true; break;
            case Kind::CountGe:
            case Kind::CountLe:
            case Kind::CountEq: has_cnt = true; break;
            case Kind::Univ:
            case Kind::Some:
            case Kind::Diff: has_glob = true; break;
            default: break;
        }
    });
    int extensions = int(has_dd) + int(has_hyb) + int(has_cnt) + int(has_glob);
    if (extensions > 1) return std::nullopt;
    if (has_dd) return Dialect::MLDD;
    if (has_hyb) return Dialect::H_AT;
    if (has_cnt) return Dialect::MLC;
    if (has_glob) return Dialect::ML_A;
    return Dialect::ML;
}

// ---------------------------------------------------------------------------
// Rewrites

inline Formula expand_implies(const Formula& f) {
    switch (f.kind()) {
        case Kind::Implies:
            return Formula::lor(Formula::lnot(expand_implies(f.child(0))), expand_implies(f.child(1)));
        case Kind::Prop:
        case Kind::Nom:
        case Kind::Top:
        case Kind::Bot:
            return f;
        default: {
            Formula a = expand_implies(f.child(0));
            if (f.arity() == 1) {
                switch (f.kind()) {
                    case Kind::Not: return Formula::lnot(a);
                    case Kind::Diamond: return Formula::diamond(a);
                    case Kind::Box: return Formula::box(a);
                    case Kind::Sat: return Formula::sat_at(f.name(), a);
                    case Kind::CountGe: return Formula::count_ge(f.bound(), a);
                    case Kind::CountLe: return Formula::count_le(f.bound(), a);
                    case Kind::CountEq: return Formula::count_eq(f.bound(), a);
                    case Kind::Univ: return Formula::univ(a);
                    case Kind::Some: return Formula::some(a);
                    case Kind::Diff: return Formula::diff(a);
                    default: break;
                }
            }
            Formula b = expand_implies(f.child(1));
            switch (f.kind()) {
                case Kind::And: return Formula::land(a, b);
                case Kind::Or: return Formula::lor(a, b);
                case Kind::Dd: return Formula::dd(a, b);
                default: break;
            }
            throw Error("expand_implies: unhandled node");
        }
    }
}

// Rewrites E<=n to ~E>=n+1 and E=n to E>=n & ~E>=n+1 throughout.
inline Formula expand_count_sugar(const Formula& f) {
    switch (f.kind()) {
        case Kind::Prop:
        case Kind::Nom:
        case Kind::Top:
        case Kind::Bot:
            return f;
        case Kind::CountLe: {
            if (f.bound() == UINT64_MAX) throw Error("count threshold overflow");
            return Formula::lnot(Formula::count_ge(f.bound() + 1, expand_count_sugar(f.child(0))));
        }
        case Kind::CountEq: {
            if (f.bound() == UINT64_MAX) throw Error("count threshold overflow");
            Formula b = expand_count_sugar(f.child(0));
            return Formula::land(Formula::count_ge(f.bound(), b),
                                 Formula::lnot(Formula::count_ge(f.bound() + 1, b)));
        }
        default: {
            Formula a = expand_count_sugar(f.child(0));
            if (f.arity() == 1) {
                switch (f.kind()) {
                    case Kind::Not: return Formula::lnot(a);
                    case Kind::Diamond: return Formula::diamond(a);
                    case Kind::Box: return Formula::box(a);
                    case Kind::Sat: return Formula::sat_at(f.name(), a);
                    case Kind::CountGe: return Formula::count_ge(f.bound(), a);
                    case Kind::Univ: return Formula::univ(a);
                    case Kind::Some: return Formula::some(a);
                    case Kind::Diff: return Formula::diff(a);
                    default: break;
                }
            }
            Formula b = expand_count_sugar(f.child(1));
            switch (f.kind()) {
                case Kind::And: return Formula::land(a, b);
                case Kind::Or: return Formula::lor(a, b);
                case Kind::Implies: return Formula::implies(a, b);
                case Kind::Dd: return Formula::dd(a, b);
                default: break;
            }
            throw Error("expand_count_sugar: unhandled node");
        }
    }
}

namespace detail {

inline Formula nnf_pos(const Formula& f);
inline Formula nnf_neg(const Formula& f);

inline Formula nnf_pos(const Formula& f) {
    switch (f.kind()) {
        case Kind::Prop:
        case Kind::Top:
        case Kind::Bot: return f;
        case Kind::Not: return nnf_neg(f.child(0));
        case Kind::And: return Formula::land(nnf_pos(f.child(0)), nnf_pos(f.child(1)));
        case Kind::Or: return Formula::lor(nnf_pos(f.child(0)), nnf_pos(f.child(1)));
        case Kind::Implies: return Formula::lor(nnf_neg(f.child(0)), nnf_pos(f.child(1)));
        case Kind::Diamond: return Formula::diamond(nnf_pos(f.child(0)));
        case Kind::Box: return Formula::box(nnf_pos(f.child(0)));
        case Kind::Univ: return Formula::univ(nnf_pos(f.child(0)));
        case Kind::Some: return Formula::some(nnf_pos(f.child(0)));
        default: throw Error("nnf: operator outside ML(A)");
    }
}

inline Formula nnf_neg(const Formula& f) {
    switch (f.kind()) {
        case Kind::Prop: return Formula::lnot(f);
        case Kind::Top: return Formula::bot();
        case Kind::Bot: return Formula::top();
        case Kind::Not: return nnf_pos(f.child(0));
        case Kind::And: return Formula::lor(nnf_neg(f.child(0)), nnf_neg(f.child(1)));
        case Kind::Or: return Formula::land(nnf_neg(f.child(0)), nnf_neg(f.child(1)));
        case Kind::Implies: return Formula::land(nnf_pos(f.child(0)), nnf_neg(f.child(1)));
        case Kind::Diamond: return Formula::box(nnf_neg(f.child(0)));
        case Kind::Box: return Formula::diamond(nnf_neg(f.child(0)));
        case Kind::Univ: return Formula::some(nnf_neg(f.child(0)));
        case Kind::Some: return Formula::univ(nnf_neg(f.child(0)));
        default: throw Error("nnf: operator outside ML(A)");
    }
}

}  // namespace detail

// Negation normal form over {~, &, |, <>, [], A, E}; negations end up on
// propositional variables only. Implications are expanded on the way.
inline Formula nnf(const Formula& f) { return detail::nnf_pos(f); }

}  // namespace mldd

#endif  // MLDD_FORMULA_HPP
