#include <catch2/catch_amalgamated.hpp>

#include "mldd/formula.hpp"
#include "mldd/oracle.hpp"
#include "mldd/parse.hpp"
#include "mldd/print.hpp"
#include "support/gen.hpp"

using namespace mldd;

static Formula P() { return Formula::prop("p"); }
static Formula Q() { return Formula::prop("q"); }

TEST_CASE("parse maps concrete syntax onto constructors") {
    CHECK(parse("@[p] q") == Formula::dd(P(), Q()));
    CHECK(parse("<> (p | <> q)") == Formula::diamond(Formula::lor(P(), Formula::diamond(Q()))));
    CHECK(parse("E>=2 p") == Formula::count_ge(2, P()));
    CHECK(parse("E<=1 p") == Formula::count_le(1, P()));
    CHECK(parse("E=0 q") == Formula::count_eq(0, Q()));
    CHECK(parse("A p & E q") == Formula::land(Formula::univ(P()), Formula::some(Q())));
    CHECK(parse("D p") == Formula::diff(P()));
    CHECK(parse("'i | @'i p") == Formula::lor(Formula::nom("i"), Formula::sat_at("i", P())));
    CHECK(parse("p -> q -> p") == Formula::implies(P(), Formula::implies(Q(), P())));
    CHECK(parse("p & q | p") == Formula::lor(Formula::land(P(), Q()), P()));
    CHECK(parse("[]~p") == Formula::box(Formula::lnot(P())));
    CHECK(parse("@[[]p] q") == Formula::dd(Formula::box(P()), Q()));
}

TEST_CASE("parse reports positions on bad input") {
    CHECK_THROWS_AS(parse("E>= p"), ParseError);
    CHECK_THROWS_AS(parse("p &"), ParseError);
    CHECK_THROWS_AS(parse("@[p q"), ParseError);
    CHECK_THROWS_AS(parse("p $ q"), ParseError);
    CHECK_THROWS_AS(parse(""), ParseError);
    try {
        parse("p | %");
        FAIL("expected a syntax error");
    } catch (const ParseError& e) {
        CHECK(e.position == 4);
    }
}

TEST_CASE("print emits the canonical form") {
    CHECK(print(Formula::dd(Formula::top(), Formula::top())) == "@[true] true");
    CHECK(print(Formula::lnot(P())) == "~p");
    CHECK(print(Formula::count_eq(2, Formula::top())) == "E=2 true");
    CHECK(print(parse("<> (p | <> q)")) == "<>(p | <>q)");
    CHECK(print(parse("(p & q) | p")) == "p & q | p");
    CHECK(print(parse("p & (q | p)")) == "p & (q | p)");
    CHECK(print(parse("@'i (p -> q)")) == "@'i (p -> q)");
}

TEST_CASE("parse after print is the identity on random formulas") {
    gen::Rng rng(20250810);
    gen::FormulaOptions o;
    o.nominals = {"i", "j"};
    o.allow_dd = o.allow_counts = o.allow_global = o.allow_hybrid = true;
    o.max_connectives = 12;
    for (int k = 0; k < 1000; ++k) {
        Formula f = gen::random_formula(rng, o);
        CAPTURE(print(f));
        CHECK(parse(print(f)) == f);
    }
}

TEST_CASE("modal depth counts only diamonds and boxes") {
    CHECK(modal_depth(P()) == 0);
    CHECK(modal_depth(parse("<> (p | <> q)")) == 2);
    CHECK(modal_depth(Formula::dd(Formula::diamond(P()), Q())) == 1);
    CHECK(modal_depth(parse("E>=2 <>p")) == 1);
    CHECK(modal_depth(parse("A <>[]p")) == 2);
    CHECK(modal_depth(parse("@'i <>p")) == 1);
}

TEST_CASE("subformulas are closed under immediate subterms") {
    auto subs = subformulas(parse("@[p] q"));
    REQUIRE(subs.size() == 3);
    CHECK(std::find(subs.begin(), subs.end(), parse("@[p] q")) != subs.end());
    CHECK(std::find(subs.begin(), subs.end(), P()) != subs.end());
    CHECK(std::find(subs.begin(), subs.end(), Q()) != subs.end());

    CHECK(subformulas(P()).size() == 1);
    auto subs2 = subformulas(parse("<>(p & q)"));
    REQUIRE(subs2.size() == 4);  // the whole, p & q, p, q
}

TEST_CASE("dd_set collects exactly the descriptions") {
    auto dds = dd_set(parse("@[p] q & @[<>p] true"));
    REQUIRE(dds.size() == 2);
    CHECK(std::find(dds.begin(), dds.end(), P()) != dds.end());
    CHECK(std::find(dds.begin(), dds.end(), Formula::diamond(P())) != dds.end());

    CHECK(dd_set(parse("<>p")).empty());

    auto nested = dd_set(parse("@[p] (@[q] r)"));
    REQUIRE(nested.size() == 2);
    CHECK(std::find(nested.begin(), nested.end(), P()) != nested.end());
    CHECK(std::find(nested.begin(), nested.end(), Q()) != nested.end());
}

TEST_CASE("boolean description test") {
    CHECK(is_boolean_dd(parse("@[p | ~q] r")));
    CHECK_FALSE(is_boolean_dd(parse("@[<>p] q")));
    CHECK(is_boolean_dd(parse("<><>p")));  // no descriptions at all
    CHECK_FALSE(is_boolean_dd(parse("@[[]p] q")));
    CHECK_FALSE(is_boolean_dd(parse("@[@[p] q] r")));
}

TEST_CASE("dialect classification") {
    CHECK(classify_dialect(parse("p & <>q")) == Dialect::ML);
    CHECK(classify_dialect(parse("@[p] q")) == Dialect::MLDD);
    CHECK(classify_dialect(parse("@'i p")) == Dialect::H_AT);
    CHECK(classify_dialect(parse("E>=2 p")) == Dialect::MLC);
    CHECK(classify_dialect(parse("A p | D q")) == Dialect::ML_A);
    CHECK_FALSE(classify_dialect(parse("@[p] q & E>=1 p")).has_value());
    CHECK(dialect_admits(Dialect::MLDD, parse("@[p] q")));
    CHECK_FALSE(dialect_admits(Dialect::MLDD, parse("'i")));
}

TEST_CASE("negation normal form follows the dualities") {
    CHECK(nnf(parse("~A p")) == parse("E ~p"));
    CHECK(nnf(parse("~(p | <>q)")) == parse("~p & []~q"));
    CHECK(nnf(parse("~~p")) == P());
    CHECK(nnf(parse("~E p")) == parse("A ~p"));
    CHECK(nnf(parse("p -> q")) == parse("~p | q"));
    CHECK(nnf(parse("~true")) == Formula::bot());
    CHECK_THROWS_AS(nnf(parse("~@[p] q")), Error);
    CHECK_THROWS_AS(nnf(parse("~D p")), Error);
}

TEST_CASE("nnf is stable and preserves meaning on small models") {
    gen::Rng rng(42);
    gen::FormulaOptions o;
    o.allow_global = true;
    o.max_connectives = 8;
    oracle::EnumerationSpec spec;
    spec.max_worlds = 3;
    spec.props = {"p", "q"};
    oracle::EnumerationSpec four = spec;
    four.max_worlds = 4;
    for (int k = 0; k < 100; ++k) {
        Formula f = gen::random_formula(rng, o);
        Formula g = nnf(f);
        CAPTURE(print(f));
        CHECK(nnf(g) == g);
        // negations sit on propositional atoms only
        bool literal_only = true;
        detail::visit_subterms(g, [&](const Formula& h) {
            if (h.kind() == Kind::Not && h.child(0).kind() != Kind::Prop) literal_only = false;
        });
        CHECK(literal_only);
        CHECK(oracle::equivalent_upto(f, g, k < 20 ? four : spec).equivalent);
    }
}

TEST_CASE("count sugar expansion matches its definition") {
    CHECK(expand_count_sugar(parse("E<=1 p")) == parse("~E>=2 p"));
    CHECK(expand_count_sugar(parse("E=2 p")) == parse("E>=2 p & ~E>=3 p"));
    CHECK(expand_count_sugar(parse("<>E=0 p")) == parse("<>(E>=0 p & ~E>=1 p)"));
}

TEST_CASE("count literals at the representation limit") {
    Formula max = parse("E>=18446744073709551615 p");
    CHECK(max.bound() == UINT64_MAX);
    CHECK(parse(print(max)) == max);
    CHECK_THROWS_AS(parse("E>=18446744073709551616 p"), ParseError);
    CHECK_THROWS_AS(expand_count_sugar(parse("E<=18446744073709551615 p")), Error);
}

TEST_CASE("canonical order puts subterms first") {
    CHECK(Formula::compare(P(), Formula::lnot(P())) < 0);
    CHECK(Formula::compare(Formula::lnot(P()), Formula::lor(P(), P())) < 0);
    CHECK(Formula::compare(P(), P()) == 0);
}

TEST_CASE("descriptions are subformulas") {
    gen::Rng rng(51);
    gen::FormulaOptions o;
    o.allow_dd = true;
    o.max_connectives = 9;
    for (int k = 0; k < 200; ++k) {
        Formula f = gen::random_formula(rng, o);
        auto subs = subformulas(f);
        for (const Formula& d : dd_set(f))
            CHECK(std::find(subs.begin(), subs.end(), d) != subs.end());
    }
}
