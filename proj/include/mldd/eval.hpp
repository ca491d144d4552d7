// The satisfaction relation for the full language.
//
// Evaluation computes the extension (set of satisfying worlds) of each
// subformula bottom-up. Descriptions, satisfaction operators, counting and
// global operators read the whole extension of their arguments, so their truth
// value is the same at every world.

#ifndef MLDD_EVAL_HPP
#define MLDD_EVAL_HPP

#include <string>
#include <unordered_map>
#include <vector>

#include "mldd/formula.hpp"
#include "mldd/kripke.hpp"

namespace mldd {

struct EvalError : Error {
    using Error::Error;
};

class Evaluator {
public:
    explicit Evaluator(const KripkeModel& m) : model_(m) {
        auto violations = validate(m);
        if (!violations.empty()) throw EvalError("invalid model: " + violations.front());
        for (std::size_t i = 0; i < m.worlds.size(); ++i) index_[m.worlds[i]] = i;
        adjacency_.assign(m.worlds.size(), std::vector<bool>(m.worlds.size(), false));
        for (const auto& [a, b] : m.relation) adjacency_[index_.at(a)][index_.at(b)] = true;
    }

    std::size_t world_count() const { return model_.worlds.size(); }

    std::size_t world_index(const std::string& w) const {
        auto it = index_.find(w);
        if (it == index_.end()) throw EvalError("unknown world '" + w + "'");
        return it->second;
    }

    bool holds(const std::string& world, const Formula& f) { return extension(f)[world_index(world)]; }

    // Worlds satisfying f, in model order.
    std::vector<std::string> satisfying_worlds(const Formula& f) {
        const auto& ext = extension(f);
        std::vector<std::string> out;
        for (std::size_t i = 0; i < ext.size(); ++i)
            if (ext[i]) out.push_back(model_.worlds[i]);
        return out;
    }

    const std::vector<bool>& extension(const Formula& f) {
        auto it = cache_.find(f);
        if (it != cache_.end()) return it->second;
        std::vector<bool> ext = compute(f);
        return cache_.emplace(f, std::move(ext)).first->second;
    }

private:
    const KripkeModel& model_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<std::vector<bool>> adjacency_;
    std::unordered_map<Formula, std::vector<bool>, FormulaHash> cache_;

    std::vector<bool> all(bool v) const { return std::vector<bool>(model_.worlds.size(), v); }

    static std::size_t count_true(const std::vector<bool>& v) {
        std::size_t n = 0;
        for (bool b : v) n += b;
        return n;
    }

    std::vector<bool> compute(const Formula& f) {
        const std::size_t n = model_.worlds.size();
        switch (f.kind()) {
            case Kind::Prop: {
                std::vector<bool> ext = all(false);
                auto it = model_.valuation.find(f.name());
                if (it != model_.valuation.end())
                    for (const auto& w : it->second) ext[index_.at(w)] = true;
                return ext;
            }
            case Kind::Nom: {
                auto it = model_.nominals.find(f.name());
                if (it == model_.nominals.end()) throw EvalError("unbound nominal '" + f.name() + "'");
                std::vector<bool> ext = all(false);
                ext[index_.at(it->second)] = true;
                return ext;
            }
            case Kind::Top: return all(true);
            case Kind::Bot: return all(false);
            case Kind::Not: {
                std::vector<bool> ext = extension(f.child(0));
                ext.flip();
                return ext;
            }
            case Kind::And: {
                std::vector<bool> a = extension(f.child(0));
                const auto& b = extension(f.child(1));
                for (std::size_t i = 0; i < n; ++i) a[i] = a[i] && b[i];
                return a;
            }
            case Kind::Or: {
                std::vector<bool> a = extension(f.child(0));
                const auto& b = extension(f.child(1));
                for (std::size_t i = 0; i < n; ++i) a[i] = a[i] || b[i];
                return a;
            }
            case Kind::Implies: {
                std::vector<bool> a = extension(f.child(0));
                const auto& b = extension(f.child(1));
                for (std::size_t i = 0; i < n; ++i) a[i] = !a[i] || b[i];
                return a;
            }
            case Kind::Diamond: {
                const auto& c = extension(f.child(0));
                std::vector<bool> ext = all(false);
                for (std::size_t w = 0; w < n; ++w)
                    for (std::size_t v = 0; v < n; ++v)
                        if (adjacency_[w][v] && c[v]) {
                            ext[w] = true;
                            break;
                        }
                return ext;
            }
            case Kind::Box: {
                const auto& c = extension(f.child(0));
                std::vector<bool> ext = all(true);
                for (std::size_t w = 0; w < n; ++w)
                    for (std::size_t v = 0; v < n; ++v)
                        if (adjacency_[w][v] && !c[v]) {
                            ext[w] = false;
                            break;
                        }
                return ext;
            }
            case Kind::Dd: {
                // True everywhere iff the description holds at exactly one
                // world and the body holds there too.
                const auto& d = extension(f.child(0));
                std::size_t hits = count_true(d);
                if (hits != 1) return all(false);
                std::size_t witness = 0;
                while (!d[witness]) ++witness;
                return all(extension(f.child(1))[witness]);
            }
            case Kind::Sat: {
                auto it = model_.nominals.find(f.name());
                if (it == model_.nominals.end()) throw EvalError("unbound nominal '" + f.name() + "'");
                return all(extension(f.child(0))[index_.at(it->second)]);
            }
            case Kind::CountGe: return all(count_true(extension(f.child(0))) >= f.bound());
            case Kind::CountLe: return all(count_true(extension(f.child(0))) <= f.bound());
            case Kind::CountEq: return all(count_true(extension(f.child(0))) == f.bound());
            case Kind::Univ: return all(count_true(extension(f.child(0))) == n);
            case Kind::Some: return all(count_true(extension(f.child(0))) >= 1);
            case Kind::Diff: {
                const auto& c = extension(f.child(0));
                std::size_t hits = count_true(c);
                std::vector<bool> ext(n);
                for (std::size_t w = 0; w < n; ++w) ext[w] = hits >= 2 || (hits == 1 && !c[w]);
                return ext;
            }
        }
        throw EvalError("satisfies: unhandled node");
    }
};

inline bool satisfies(const KripkeModel& m, const std::string& world, const Formula& f) {
    Evaluator ev(m);
    return ev.holds(world, f);
}

}  // namespace mldd

#endif  // MLDD_EVAL_HPP
