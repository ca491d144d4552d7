// Canonical printer; parse(print(f)) is structurally equal to f.

#ifndef MLDD_PRINT_HPP
#define MLDD_PRINT_HPP

#include <string>

#include "mldd/formula.hpp"

namespace mldd {

namespace detail {

// Binding strength used for parenthesisation: -> 1, | 2, & 3, unary 4, atoms 5.
inline int precedence(Kind k) {
    switch (k) {
        case Kind::Implies: return 1;
        case Kind::Or: return 2;
        case Kind::And: return 3;
        case Kind::Prop:
        case Kind::Nom:
        case Kind::Top:
        case Kind::Bot: return 5;
        default: return 4;
    }
}

inline void print_to(const Formula& f, int min_prec, std::string& out) {
    int prec = precedence(f.kind());
    bool parens = prec < min_prec;
    if (parens) out += '(';
    switch (f.kind()) {
        case Kind::Prop: out += f.name(); break;
        case Kind::Nom:
            out += '\'';
            out += f.name();
            break;
        case Kind::Top: out += "true"; break;
        case Kind::Bot: out += "false"; break;
        case Kind::Not:
            out += '~';
            print_to(f.child(0), 4, out);
            break;
        case Kind::Diamond:
            out += "<>";
            print_to(f.child(0), 4, out);
            break;
        case Kind::Box:
            out += "[]";
            print_to(f.child(0), 4, out);
            break;
        case Kind::Univ:
            out += "A ";
            print_to(f.child(0), 4, out);
            break;
        case Kind::Some:
            out += "E ";
            print_to(f.child(0), 4, out);
            break;
        case Kind::Diff:
            out += "D ";
            print_to(f.child(0), 4, out);
            break;
        case Kind::CountGe:
            out += "E>=" + std::to_string(f.bound()) + " ";
            print_to(f.child(0), 4, out);
            break;
        case Kind::CountLe:
            out += "E<=" + std::to_string(f.bound()) + " ";
            print_to(f.child(0), 4, out);
            break;
        case Kind::CountEq:
            out += "E=" + std::to_string(f.bound()) + " ";
            print_to(f.child(0), 4, out);
            break;
        case Kind::Dd:
            out += "@[";
            print_to(f.child(0), 0, out);
            out += "] ";
            print_to(f.child(1), 4, out);
            break;
        case Kind::Sat:
            out += "@'";
            out += f.name();
            out += ' ';
            print_to(f.child(0), 4, out);
            break;
        case Kind::And:
            print_to(f.child(0), 3, out);
            out += " & ";
            print_to(f.child(1), 4, out);
            break;
        case Kind::Or:
            print_to(f.child(0), 2, out);
            out += " | ";
            print_to(f.child(1), 3, out);
            break;
        case Kind::Implies:
            print_to(f.child(0), 2, out);
            out += " -> ";
            print_to(f.child(1), 1, out);
            break;
    }
    if (parens) out += ')';
}

}  // namespace detail

inline std::string print(const Formula& f) {
    std::string out;
    detail::print_to(f, 0, out);
    return out;
}

}  // namespace mldd

#endif  // MLDD_PRINT_HPP
