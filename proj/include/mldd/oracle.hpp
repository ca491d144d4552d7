// Brute-force ground truth: bounded model enumeration up to isomorphism,
// bounded satisfiability, and pointwise equivalence checking.
//
// Two engines share one compiled formula representation:
//
//  * enumerate_models / equivalent_upto walk a deterministic stream of
//    canonical models (the lexicographically least relabeling of each
//    isomorphism class) and evaluate extensions as bit masks.
//
//  * brute_sat runs an exhaustive depth-first search over the same bounded
//    model space, deciding one valuation/relation bit at a time and pruning
//    with a three-valued evaluation: a branch is abandoned only when the
//    formula is already false at every world under every completion, so the
//    search remains complete up to the world bound. Formulas without Diamond
//    or Box never read the relation, and the search then fixes it empty.
//
// Verdicts are deterministic; none_within_bound is a bounded answer, never a
// general unsatisfiability claim.

#ifndef MLDD_ORACLE_HPP
#define MLDD_ORACLE_HPP

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "mldd/eval.hpp"
#include "mldd/formula.hpp"
#include "mldd/kripke.hpp"

namespace mldd {

struct LimitExceeded : Error {
    using Error::Error;
};

namespace oracle {

constexpr unsigned kMaxWorlds = 8;

struct EnumerationSpec {
    unsigned max_worlds = 4;
    std::vector<std::string> props;
    std::vector<std::string> nominals;
    FrameClass frame = FrameClass::All;
};

inline EnumerationSpec spec_for(const Formula& f, unsigned max_worlds, FrameClass frame = FrameClass::All) {
    return EnumerationSpec{max_worlds, prop_names(f), nominal_names(f), frame};
}

struct CompactModel {
    unsigned n = 0;
    std::array<std::uint32_t, kMaxWorlds> rel{};  // rel[w] = successor mask
    std::vector<std::uint32_t> val;               // per prop, aligned with EnumerationSpec::props
    std::vector<unsigned> nom;                    // per nominal, a world index

    std::uint32_t full() const { return n == 32 ? ~0u : ((1u << n) - 1); }
};

inline KripkeModel materialize(const CompactModel& m, const EnumerationSpec& spec) {
    KripkeModel out;
    for (unsigned w = 0; w < m.n; ++w) out.worlds.push_back("w" + std::to_string(w));
    for (unsigned w = 0; w < m.n; ++w)
        for (unsigned v = 0; v < m.n; ++v)
            if (m.rel[w] >> v & 1) out.relation.emplace_back(out.worlds[w], out.worlds[v]);
    for (std::size_t p = 0; p < spec.props.size(); ++p) {
        std::vector<std::string> ws;
        for (unsigned w = 0; w < m.n; ++w)
            if (m.val[p] >> w & 1) ws.push_back(out.worlds[w]);
        if (!ws.empty()) out.valuation[spec.props[p]] = std::move(ws);
    }
    for (std::size_t i = 0; i < spec.nominals.size(); ++i) out.nominals[spec.nominals[i]] = out.worlds[m.nom[i]];
    return out;
}

// ---------------------------------------------------------------------------
// Compiled formulas: a post-order op array with structural sharing, props and
// nominals resolved against the spec alphabet.

struct FlatFormula {
    struct Op {
        Kind kind{};
        int a = -1, b = -1;     // operand op indices
        int sym = -1;           // prop / nominal index
        std::uint64_t n = 0;    // count threshold
        unsigned uses_box_or_diamond = 0;
    };
    std::vector<Op> ops;  // root last
    bool modal = false;   // mentions Diamond or Box

    static FlatFormula compile(const Formula& f, const EnumerationSpec& spec) {
        FlatFormula out;
        std::unordered_map<Formula, int, FormulaHash> memo;
        out.compile_node(f, spec, memo);
        out.modal = modal_depth(f) > 0;
        return out;
    }

private:
    int compile_node(const Formula& f, const EnumerationSpec& spec,
                     std::unordered_map<Formula, int, FormulaHash>& memo) {
        auto it = memo.find(f);
        if (it != memo.end()) return it->second;
        Op op;
        op.kind = f.kind();
        op.n = f.kind() == Kind::CountGe || f.kind() == Kind::CountLe || f.kind() == Kind::CountEq
                   ? f.bound()
                   : 0;
        if (f.kind() == Kind::Prop) {
            auto p = std::find(spec.props.begin(), spec.props.end(), f.name());
            if (p == spec.props.end()) throw Error("alphabet mismatch: prop '" + f.name() + "' not in spec");
            op.sym = static_cast<int>(p - spec.props.begin());
        } else if (f.kind() == Kind::Nom || f.kind() == Kind::Sat) {
            auto p = std::find(spec.nominals.begin(), spec.nominals.end(), f.name());
            if (p == spec.nominals.end())
                throw Error("alphabet mismatch: nominal '" + f.name() + "' not in spec");
            op.sym = static_cast<int>(p - spec.nominals.begin());
        }
        if (f.arity() >= 1) op.a = compile_node(f.child(0), spec, memo);
        if (f.arity() >= 2) op.b = compile_node(f.child(1), spec, memo);
        int idx = static_cast<int>(ops.size());
        ops.push_back(op);
        memo.emplace(f, idx);
        return idx;
    }
};

// Extension mask of every op; returns the root mask.
inline std::uint32_t eval_masks(const FlatFormula& ff, const CompactModel& m, std::vector<std::uint32_t>& scratch) {
    const std::uint32_t full = m.full();
    scratch.resize(ff.ops.size());
    for (std::size_t i = 0; i < ff.ops.size(); ++i) {
        const auto& op = ff.ops[i];
        std::uint32_t a = op.a >= 0 ? scratch[op.a] : 0;
        std::uint32_t b = op.b >= 0 ? scratch[op.b] : 0;
        std::uint32_t r = 0;
        switch (op.kind) {
            case Kind::Prop: r = m.val[op.sym]; break;
            case Kind::Nom: r = 1u << m.nom[op.sym]; break;
            case Kind::Top: r = full; break;
            case Kind::Bot: r = 0; break;
            case Kind::Not: r = full & ~a; break;
            case Kind::And: r = a & b; break;
            case Kind::Or: r = a | b; break;
            case Kind::Implies: r = full & (~a | b); break;
            case Kind::Diamond:
                for (unsigned w = 0; w < m.n; ++w)
                    if (m.rel[w] & a) r |= 1u << w;
                break;
            case Kind::Box:
                for (unsigned w = 0; w < m.n; ++w)
                    if ((m.rel[w] & ~a & full) == 0) r |= 1u << w;
                break;
            case Kind::Dd:
                if (std::popcount(a) == 1 && (b & a)) r = full;
                break;
            case Kind::Sat: r = (a >> m.nom[op.sym] & 1) ? full : 0; break;
            case Kind::CountGe: r = static_cast<std::uint64_t>(std::popcount(a)) >= op.n ? full : 0; break;
            case Kind::CountLe: r = static_cast<std::uint64_t>(std::popcount(a)) <= op.n ? full : 0; break;
            case Kind::CountEq: r = static_cast<std::uint64_t>(std::popcount(a)) == op.n ? full : 0; break;
            case Kind::Univ: r = a == full ? full : 0; break;
            case Kind::Some: r = a != 0 ? full : 0; break;
            case Kind::Diff: {
                int hits = std::popcount(a);
                if (hits >= 2)
                    r = full;
                else if (hits == 1)
                    r = full & ~a;
                break;
            }
        }
        scratch[i] = r;
    }
    return scratch.back();
}

// ---------------------------------------------------------------------------
// Canonical model stream.

namespace detail {

inline void check_spec(const EnumerationSpec& spec) {
    if (spec.max_worlds < 1) throw Error("enumeration spec: max_worlds must be >= 1");
    if (spec.max_worlds > kMaxWorlds)
        throw Error("enumeration spec: max_worlds above supported limit " + std::to_string(kMaxWorlds));
}

inline std::vector<std::vector<unsigned>> permutations(unsigned n) {
    std::vector<unsigned> base(n);
    std::iota(base.begin(), base.end(), 0u);
    std::vector<std::vector<unsigned>> out;
    do {
        out.push_back(base);
    } while (std::next_permutation(base.begin(), base.end()));
    return out;
}

// rel bit (w,v) lives at position w*n + v.
inline std::uint64_t permute_rel(std::uint64_t rel, const std::vector<unsigned>& perm, unsigned n) {
    std::uint64_t out = 0;
    for (unsigned w = 0; w < n; ++w)
        for (unsigned v = 0; v < n; ++v)
            if (rel >> (perm[w] * n + perm[v]) & 1) out |= 1ull << (w * n + v);
    return out;
}

inline std::uint32_t permute_mask(std::uint32_t mask, const std::vector<unsigned>& perm, unsigned n) {
    std::uint32_t out = 0;
    for (unsigned w = 0; w < n; ++w)
        if (mask >> perm[w] & 1) out |= 1u << w;
    return out;
}

inline std::uint64_t chain_rel(unsigned n) {
    std::uint64_t rel = 0;
    for (unsigned w = 0; w < n; ++w)
        for (unsigned v = w + 1; v < n; ++v) rel |= 1ull << (w * n + v);
    return rel;
}

}  // namespace detail

// Streams every model with 1..max_worlds worlds over the spec alphabet whose
// frame lies in the requested class, exactly one representative per
// isomorphism class, in a fixed deterministic order.
class ModelEnumerator {
public:
    explicit ModelEnumerator(EnumerationSpec spec) : spec_(std::move(spec)) {
        detail::check_spec(spec_);
        begin_size(1);
    }

    const EnumerationSpec& spec() const { return spec_; }

    bool next(CompactModel& out) {
        while (size_ <= spec_.max_worlds) {
            if (advance(out)) return true;
            begin_size(size_ + 1);
        }
        return false;
    }

    bool next(KripkeModel& out) {
        CompactModel m;
        if (!next(m)) return false;
        out = materialize(m, spec_);
        return true;
    }

private:
    EnumerationSpec spec_;
    unsigned size_ = 0;
    bool linear_ = false;
    std::uint64_t rel_ = 0, rel_count_ = 0;
    std::uint64_t val_ = 0, val_count_ = 0;
    std::uint64_t nom_ = 0, nom_count_ = 0;
    bool rel_fresh_ = true;
    std::vector<std::vector<unsigned>> perms_;
    std::vector<std::vector<unsigned>> rel_stabilizer_;

    void begin_size(unsigned k) {
        size_ = k;
        if (size_ > spec_.max_worlds) return;
        linear_ = spec_.frame != FrameClass::All;
        std::uint64_t rel_bits = static_cast<std::uint64_t>(size_) * size_;
        if (!linear_ && rel_bits >= 64)
            throw Error("enumeration space too large: use a smaller max_worlds for the all-frames class");
        rel_count_ = linear_ ? 1 : (1ull << rel_bits);
        rel_ = linear_ ? detail::chain_rel(size_) : 0;
        val_count_ = 1ull << (static_cast<std::uint64_t>(size_) * spec_.props.size());
        nom_count_ = 1;
        for (std::size_t i = 0; i < spec_.nominals.size(); ++i) nom_count_ *= size_;
        val_ = 0;
        nom_ = 0;
        rel_fresh_ = true;
        perms_ = detail::permutations(size_);
    }

    // The representative of an isomorphism class is the model whose
    // (relation, valuation, nominal) encoding is lexicographically least over
    // all relabelings; skipping everything else visits each class once.
    bool advance(CompactModel& out) {
        while (true) {
            if (linear_ && rel_fresh_) {
                rel_stabilizer_.assign(1, perms_.front());  // chains are rigid
                rel_fresh_ = false;
            }
            if (!linear_ && rel_fresh_) {
                rel_fresh_ = false;
                rel_stabilizer_.clear();
                bool minimal = true;
                for (const auto& perm : perms_) {
                    std::uint64_t r = detail::permute_rel(rel_, perm, size_);
                    if (r < rel_) {
                        minimal = false;
                        break;
                    }
                    if (r == rel_) rel_stabilizer_.push_back(perm);
                }
                if (!minimal) {
                    if (!bump_rel()) return false;
                    continue;
                }
            }
            for (; val_ < val_count_; ++val_) {
                bool canonical = true;
                for (const auto& perm : rel_stabilizer_) {
                    if (perm_is_identity(perm)) continue;
                    if (permuted_val_key(perm) < val_) {
                        canonical = false;
                        break;
                    }
                }
                if (!canonical) continue;
                // Nominal assignments are enumerated within the residual
                // stabilizer of (relation, valuation).
                for (; nom_ < nom_count_; ++nom_) {
                    bool nom_canonical = true;
                    for (const auto& perm : rel_stabilizer_) {
                        if (perm_is_identity(perm)) continue;
                        if (permuted_val_key(perm) != val_) continue;
                        if (permuted_nom_key(perm) < nom_) {
                            nom_canonical = false;
                            break;
                        }
                    }
                    if (!nom_canonical) continue;
                    fill(out);
                    ++nom_;
                    return true;
                }
                nom_ = 0;
            }
            val_ = 0;
            if (!bump_rel()) return false;
        }
    }

    static bool perm_is_identity(const std::vector<unsigned>& perm) {
        for (unsigned i = 0; i < perm.size(); ++i)
            if (perm[i] != i) return false;
        return true;
    }

    bool bump_rel() {
        if (linear_) return false;
        ++rel_;
        rel_fresh_ = true;
        return rel_ < rel_count_;
    }

    std::uint32_t val_mask(std::size_t prop) const {
        return static_cast<std::uint32_t>(val_ >> (prop * size_)) & ((1u << size_) - 1);
    }

    std::uint64_t permuted_val_key(const std::vector<unsigned>& perm) const {
        std::uint64_t key = 0;
        for (std::size_t p = 0; p < spec_.props.size(); ++p)
            key |= static_cast<std::uint64_t>(detail::permute_mask(val_mask(p), perm, size_)) << (p * size_);
        return key;
    }

    std::uint64_t permuted_nom_key(const std::vector<unsigned>& perm) const {
        // nom_ encodes world indices in base `size_`, least significant digit
        // for the first nominal; relabeling maps each digit through perm^-1.
        std::vector<unsigned> inv(size_);
        for (unsigned i = 0; i < size_; ++i) inv[perm[i]] = i;
        std::uint64_t key = 0, mult = 1, v = nom_;
        for (std::size_t i = 0; i < spec_.nominals.size(); ++i) {
            key += mult * inv[v % size_];
            v /= size_;
            mult *= size_;
        }
        return key;
    }

    void fill(CompactModel& out) const {
        out.n = size_;
        out.rel.fill(0);
        for (unsigned w = 0; w < size_; ++w)
            out.rel[w] = static_cast<std::uint32_t>(rel_ >> (w * size_)) & ((1u << size_) - 1);
        out.val.assign(spec_.props.size(), 0);
        for (std::size_t p = 0; p < spec_.props.size(); ++p) out.val[p] = val_mask(p);
        out.nom.assign(spec_.nominals.size(), 0);
        std::uint64_t v = nom_;
        for (std::size_t i = 0; i < spec_.nominals.size(); ++i) {
            out.nom[i] = static_cast<unsigned>(v % size_);
            v /= size_;
        }
    }
};

// Materialized canonical stream, cached per spec shape (prop names do not
// affect the stream, only its length). Map references stay valid across
// later insertions, so handing them out is safe.
inline const std::vector<CompactModel>& canonical_models(const EnumerationSpec& spec) {
    detail::check_spec(spec);
    struct Key {
        unsigned max_worlds;
        std::size_t props, noms;
        FrameClass frame;
        bool operator<(const Key& o) const {
            return std::tie(max_worlds, props, noms, frame) < std::tie(o.max_worlds, o.props, o.noms, o.frame);
        }
    };
    static std::mutex lock;
    static std::map<Key, std::vector<CompactModel>> cache;
    std::lock_guard<std::mutex> guard(lock);
    Key key{spec.max_worlds, spec.props.size(), spec.nominals.size(), spec.frame};
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<CompactModel> models;
    ModelEnumerator en(spec);
    CompactModel m;
    while (en.next(m)) models.push_back(m);
    return cache.emplace(key, std::move(models)).first->second;
}

// ---------------------------------------------------------------------------
// brute_sat: exhaustive bounded search with three-valued pruning.

namespace detail {

struct Tri {
    std::uint32_t t = 0, f = 0;
};

// Partial model: each valuation/relation bit is decided or open; nominal
// assignments are fixed before the search starts.
struct PartialModel {
    unsigned n = 0;
    std::uint32_t full = 0;
    std::vector<std::uint32_t> val_true, val_dec;
    std::array<std::uint32_t, kMaxWorlds> rel_true{}, rel_dec{};
    std::vector<unsigned> nom;
};

// Three-valued extension masks: t = true under every completion, f = false
// under every completion.
inline Tri eval_tri(const FlatFormula& ff, const PartialModel& m, std::vector<Tri>& scratch) {
    const std::uint32_t full = m.full;
    scratch.resize(ff.ops.size());
    for (std::size_t i = 0; i < ff.ops.size(); ++i) {
        const auto& op = ff.ops[i];
        Tri a = op.a >= 0 ? scratch[op.a] : Tri{};
        Tri b = op.b >= 0 ? scratch[op.b] : Tri{};
        Tri r;
        switch (op.kind) {
            case Kind::Prop:
                r.t = m.val_true[op.sym];
                r.f = m.val_dec[op.sym] & ~m.val_true[op.sym] & full;
                break;
            case Kind::Nom:
                r.t = 1u << m.nom[op.sym];
                r.f = full & ~r.t;
                break;
            case Kind::Top: r.t = full; break;
            case Kind::Bot: r.f = full; break;
            case Kind::Not: r = Tri{a.f, a.t}; break;
            case Kind::And: r = Tri{a.t & b.t, a.f | b.f}; break;
            case Kind::Or: r = Tri{a.t | b.t, a.f & b.f}; break;
            case Kind::Implies: r = Tri{a.f | b.t, a.t & b.f}; break;
            case Kind::Diamond:
                for (unsigned w = 0; w < m.n; ++w) {
                    std::uint32_t sure_edges = m.rel_true[w];
                    std::uint32_t maybe_edges = (m.rel_true[w] | ~m.rel_dec[w]) & full;
                    if (sure_edges & a.t) r.t |= 1u << w;
                    if ((maybe_edges & ~a.f) == 0) r.f |= 1u << w;
                }
                break;
            case Kind::Box:
                for (unsigned w = 0; w < m.n; ++w) {
                    std::uint32_t sure_edges = m.rel_true[w];
                    std::uint32_t maybe_edges = (m.rel_true[w] | ~m.rel_dec[w]) & full;
                    if ((maybe_edges & ~a.t) == 0) r.t |= 1u << w;
                    if (sure_edges & a.f) r.f |= 1u << w;
                }
                break;
            case Kind::Dd: {
                int sure = std::popcount(a.t);
                std::uint32_t possible = full & ~a.f;
                int maybe = std::popcount(possible);
                if (sure >= 2 || maybe == 0) {
                    r.f = full;
                } else if (sure == 1) {
                    std::uint32_t witness = a.t;
                    if (maybe == 1) {
                        if (b.t & witness) r.t = full;
                        if (b.f & witness) r.f = full;
                    } else if (b.f & witness) {
                        // Either the description stays unique and the body is
                        // false there, or it does not stay unique.
                        r.f = full;
                    }
                }
                break;
            }
            case Kind::Sat: {
                std::uint32_t bit = 1u << m.nom[op.sym];
                if (a.t & bit) r.t = full;
                if (a.f & bit) r.f = full;
                break;
            }
            case Kind::CountGe: {
                std::uint64_t sure = std::popcount(a.t);
                std::uint64_t maybe = std::popcount(full & ~a.f);
                if (sure >= op.n) r.t = full;
                if (maybe < op.n) r.f = full;
                break;
            }
            case Kind::CountLe: {
                std::uint64_t sure = std::popcount(a.t);
                std::uint64_t maybe = std::popcount(full & ~a.f);
                if (maybe <= op.n) r.t = full;
                if (sure > op.n) r.f = full;
                break;
            }
            case Kind::CountEq: {
                std::uint64_t sure = std::popcount(a.t);
                std::uint64_t maybe = std::popcount(full & ~a.f);
                if (sure == op.n && maybe == op.n) r.t = full;
                if (sure > op.n || maybe < op.n) r.f = full;
                break;
            }
            case Kind::Univ:
                if (a.t == full) r.t = full;
                if (a.f) r.f = full;
                break;
            case Kind::Some:
                if (a.t) r.t = full;
                if (a.f == full) r.f = full;
                break;
            case Kind::Diff: {
                std::uint32_t possible = full & ~a.f;
                for (unsigned w = 0; w < m.n; ++w) {
                    if (a.t & ~(1u << w)) r.t |= 1u << w;
                    if ((possible & ~(1u << w)) == 0) r.f |= 1u << w;
                }
                break;
            }
        }
        scratch[i] = r;
    }
    return scratch.back();
}

struct BitRef {
    bool is_rel;
    unsigned row;  // world (rel) or prop index (val)
    unsigned bit;
};

class DfsSearcher {
public:
    DfsSearcher(const FlatFormula& ff, const EnumerationSpec& spec, std::uint64_t budget)
        : ff_(ff), spec_(spec), budget_(budget) {}

    // Returns true and fills `out` when a model of size exactly n exists.
    bool search_size(unsigned n, CompactModel& out) {
        n_ = n;
        std::uint64_t nom_total = 1;
        for (std::size_t i = 0; i < spec_.nominals.size(); ++i) nom_total *= n;
        for (std::uint64_t nom = 0; nom < nom_total; ++nom) {
            pm_ = PartialModel{};
            pm_.n = n;
            pm_.full = (n == 32 ? ~0u : (1u << n) - 1);
            pm_.val_true.assign(spec_.props.size(), 0);
            pm_.val_dec.assign(spec_.props.size(), 0);
            pm_.nom.assign(spec_.nominals.size(), 0);
            std::uint64_t v = nom;
            for (std::size_t i = 0; i < spec_.nominals.size(); ++i) {
                pm_.nom[i] = static_cast<unsigned>(v % n);
                v /= n;
            }
            bool relation_free = !ff_.modal && spec_.frame == FrameClass::All;
            if (relation_free) {
                for (unsigned w = 0; w < n; ++w) pm_.rel_dec[w] = pm_.full;  // fixed empty
            } else if (spec_.frame != FrameClass::All) {
                std::uint64_t chain = chain_rel(n);
                for (unsigned w = 0; w < n; ++w) {
                    pm_.rel_true[w] = static_cast<std::uint32_t>(chain >> (w * n)) & pm_.full;
                    pm_.rel_dec[w] = pm_.full;
                }
            }
            build_order(!relation_free && spec_.frame == FrameClass::All);
            if (dfs(0, out)) return true;
        }
        return false;
    }

private:
    const FlatFormula& ff_;
    const EnumerationSpec& spec_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    unsigned n_ = 0;
    PartialModel pm_;
    std::vector<BitRef> order_;
    std::vector<Tri> scratch_;

    // Valuation bits first (most frequently mentioned props first, so the
    // propositional core of the formula starts pruning early), then relation
    // rows when the relation is actually free.
    void build_order(bool free_relation) {
        order_.clear();
        std::vector<std::size_t> freq(spec_.props.size(), 0);
        for (const auto& op : ff_.ops)
            if (op.kind == Kind::Prop) ++freq[op.sym];
        std::vector<unsigned> prop_order(spec_.props.size());
        std::iota(prop_order.begin(), prop_order.end(), 0u);
        std::stable_sort(prop_order.begin(), prop_order.end(),
                         [&](unsigned x, unsigned y) { return freq[x] > freq[y]; });
        for (unsigned p : prop_order)
            for (unsigned w = 0; w < n_; ++w) order_.push_back({false, p, w});
        if (free_relation)
            for (unsigned w = 0; w < n_; ++w)
                for (unsigned v = 0; v < n_; ++v) order_.push_back({true, w, v});
    }

    bool dfs(std::size_t depth, CompactModel& out) {
        if (budget_ && ++nodes_ > budget_) throw LimitExceeded("oracle search budget exhausted");
        Tri root = eval_tri(ff_, pm_, scratch_);
        if (root.t) {
            finish(out);
            return true;
        }
        if (root.f == pm_.full) return false;
        if (depth >= order_.size()) return false;  // fully decided yet undetermined: cannot happen
        const BitRef bit = order_[depth];
        for (int value = 0; value <= 1; ++value) {
            set_bit(bit, value != 0, true);
            if (dfs(depth + 1, out)) return true;
            set_bit(bit, value != 0, false);
        }
        return false;
    }

    void set_bit(const BitRef& bit, bool value, bool on) {
        std::uint32_t mask = 1u << bit.bit;
        if (bit.is_rel) {
            if (on) {
                pm_.rel_dec[bit.row] |= mask;
                if (value) pm_.rel_true[bit.row] |= mask;
            } else {
                pm_.rel_dec[bit.row] &= ~mask;
                pm_.rel_true[bit.row] &= ~mask;
            }
        } else {
            if (on) {
                pm_.val_dec[bit.row] |= mask;
                if (value) pm_.val_true[bit.row] |= mask;
            } else {
                pm_.val_dec[bit.row] &= ~mask;
                pm_.val_true[bit.row] &= ~mask;
            }
        }
    }

    // Open bits complete to false/absent.
    void finish(CompactModel& out) const {
        out.n = n_;
        out.rel.fill(0);
        for (unsigned w = 0; w < n_; ++w) out.rel[w] = pm_.rel_true[w];
        out.val.assign(spec_.props.size(), 0);
        for (std::size_t p = 0; p < spec_.props.size(); ++p) out.val[p] = pm_.val_true[p];
        out.nom = pm_.nom;
    }
};

}  // namespace detail

enum class BruteVerdict { Sat, NoneWithinBound };

struct BruteResult {
    BruteVerdict verdict = BruteVerdict::NoneWithinBound;
    KripkeModel model;
    std::string world;
};

inline void check_alphabet(const Formula& f, const EnumerationSpec& spec) {
    for (const auto& p : prop_names(f))
        if (std::find(spec.props.begin(), spec.props.end(), p) == spec.props.end())
            throw Error("alphabet mismatch: prop '" + p + "' not in spec");
    for (const auto& i : nominal_names(f))
        if (std::find(spec.nominals.begin(), spec.nominals.end(), i) == spec.nominals.end())
            throw Error("alphabet mismatch: nominal '" + i + "' not in spec");
}

// First satisfying (model, world) in search order, or none within the bound.
// budget = 0 searches without a node limit.
inline BruteResult brute_sat(const Formula& f, const EnumerationSpec& spec, std::uint64_t budget = 0) {
    detail::check_spec(spec);
    check_alphabet(f, spec);
    FlatFormula ff = FlatFormula::compile(f, spec);
    detail::DfsSearcher searcher(ff, spec, budget);
    CompactModel witness;
    for (unsigned n = 1; n <= spec.max_worlds; ++n) {
        if (!searcher.search_size(n, witness)) continue;
        BruteResult res;
        res.verdict = BruteVerdict::Sat;
        res.model = materialize(witness, spec);
        std::vector<std::uint32_t> scratch;
        std::uint32_t ext = eval_masks(ff, witness, scratch);
        if (!ext) throw Error("internal: oracle witness failed verification");
        res.world = res.model.worlds[static_cast<unsigned>(std::countr_zero(ext))];
        if (!satisfies(res.model, res.world, f)) throw Error("internal: oracle witness failed verification");
        return res;
    }
    return BruteResult{};
}

struct EquivResult {
    bool equivalent = true;
    KripkeModel model;  // countermodel when not equivalent
    std::string world;
};

// Pointwise agreement at every world of every canonical model within bound.
inline EquivResult equivalent_upto(const Formula& f, const Formula& g, const EnumerationSpec& spec) {
    detail::check_spec(spec);
    check_alphabet(f, spec);
    check_alphabet(g, spec);
    FlatFormula ff = FlatFormula::compile(f, spec);
    FlatFormula fg = FlatFormula::compile(g, spec);
    std::vector<std::uint32_t> scratch;
    for (const CompactModel& m : canonical_models(spec)) {
        std::uint32_t ef = eval_masks(ff, m, scratch);
        std::uint32_t eg = eval_masks(fg, m, scratch);
        if (ef != eg) {
            EquivResult res;
            res.equivalent = false;
            res.model = materialize(m, spec);
            res.world = res.model.worlds[static_cast<unsigned>(std::countr_zero(ef ^ eg))];
            return res;
        }
    }
    return EquivResult{};
}

}  // namespace oracle
}  // namespace mldd

#endif  // MLDD_ORACLE_HPP
