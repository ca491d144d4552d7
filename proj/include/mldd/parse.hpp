// Concrete syntax. Atoms are [a-z][a-z0-9_]*, nominals get a leading
// apostrophe. Unary operators (~ <> [] A E D E>=n E<=n E=n @[d] @'i) bind
// tightest, then &, then |, then -> (right-associative).

#ifndef MLDD_PARSE_HPP
#define MLDD_PARSE_HPP

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include "mldd/formula.hpp"

namespace mldd {

struct ParseError : Error {
    std::size_t position;
    ParseError(const std::string& msg, std::size_t pos)
        : Error(msg + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
};

namespace detail {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Formula run() {
        Formula f = parse_implies();
        skip_ws();
        if (pos_ != text_.size()) fail("trailing input");
        return f;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError("syntax error: " + msg, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool eat(std::string_view s) {
        skip_ws();
        if (text_.substr(pos_, s.size()) == s) {
            pos_ += s.size();
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    std::string lex_name() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ >= text_.size() || !std::islower(static_cast<unsigned char>(text_[pos_]))) fail("expected a name");
        ++pos_;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (std::islower(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c)) ||
                c == '_')
                ++pos_;
            else
                break;
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    std::uint64_t lex_number() {
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            fail("expected a count");
        std::uint64_t n = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            std::uint64_t d = static_cast<std::uint64_t>(text_[pos_] - '0');
            if (n > (UINT64_MAX - d) / 10) fail("count literal too large");
            n = n * 10 + d;
            ++pos_;
        }
        return n;
    }

    Formula parse_implies() {
        Formula lhs = parse_or();
        if (eat("->")) return Formula::implies(std::move(lhs), parse_implies());
        return lhs;
    }

    Formula parse_or() {
        Formula f = parse_and();
        while (true) {
            skip_ws();
            // '|' but not part of another token; the grammar has no '||'.
            if (pos_ < text_.size() && text_[pos_] == '|') {
                ++pos_;
                f = Formula::lor(std::move(f), parse_and());
            } else {
                break;
            }
        }
        return f;
    }

    Formula parse_and() {
        Formula f = parse_unary();
        while (eat('&')) f = Formula::land(std::move(f), parse_unary());
        return f;
    }

    Formula parse_unary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        char c = text_[pos_];
        if (c == '~') {
            ++pos_;
            return Formula::lnot(parse_unary());
        }
        if (c == '<') {
            if (!eat("<>")) fail("expected '<>'");
            return Formula::diamond(parse_unary());
        }
        if (c == '[') {
            if (!eat("[]")) fail("expected '[]'");
            return Formula::box(parse_unary());
        }
        if (c == 'A') {
            ++pos_;
            return Formula::univ(parse_unary());
        }
        if (c == 'D') {
            ++pos_;
            return Formula::diff(parse_unary());
        }
        if (c == 'E') {
            ++pos_;
            if (pos_ + 1 < text_.size() && text_[pos_] == '>' && text_[pos_ + 1] == '=') {
                pos_ += 2;
                std::uint64_t n = lex_number();
                return Formula::count_ge(n, parse_unary());
            }
            if (pos_ + 1 < text_.size() && text_[pos_] == '<' && text_[pos_ + 1] == '=') {
                pos_ += 2;
                std::uint64_t n = lex_number();
                return Formula::count_le(n, parse_unary());
            }
            if (pos_ < text_.size() && text_[pos_] == '=') {
                ++pos_;
                std::uint64_t n = lex_number();
                return Formula::count_eq(n, parse_unary());
            }
            return Formula::some(parse_unary());
        }
        if (c == '@') {
            ++pos_;
            if (pos_ < text_.size() && text_[pos_] == '[') {
                ++pos_;
                Formula desc = parse_implies();
                skip_ws();
                if (!eat(']')) fail("expected ']'");
                return Formula::dd(std::move(desc), parse_unary());
            }
            if (pos_ < text_.size() && text_[pos_] == '\'') {
                ++pos_;
                std::string nominal = lex_name_here();
                return Formula::sat_at(std::move(nominal), parse_unary());
            }
            fail("expected '[' or a nominal after '@'");
        }
        return parse_primary();
    }

    // Name immediately at the cursor, no leading whitespace allowed.
    std::string lex_name_here() {
        if (pos_ >= text_.size() || !std::islower(static_cast<unsigned char>(text_[pos_])))
            fail("expected a name");
        return lex_name();
    }

    Formula parse_primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Formula f = parse_implies();
            if (!eat(')')) fail("expected ')'");
            return f;
        }
        if (c == '\'') {
            ++pos_;
            return Formula::nom(lex_name_here());
        }
        if (std::islower(static_cast<unsigned char>(c))) {
            std::string name = lex_name();
            if (name == "true") return Formula::top();
            if (name == "false") return Formula::bot();
            return Formula::prop(std::move(name));
        }
        fail(std::string("unknown token '") + c + "'");
    }
};

}  // namespace detail

inline Formula parse(std::string_view text) { return detail::Parser(text).run(); }

}  // namespace mldd

#endif  // MLDD_PARSE_HPP
