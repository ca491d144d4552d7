#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "mldd/eval.hpp"
#include "mldd/game.hpp"
#include "mldd/oracle.hpp"
#include "mldd/parse.hpp"
#include "mldd/print.hpp"
#include "support/gen.hpp"

using namespace mldd;

static bool contains(const std::vector<Formula>& set, const Formula& f) {
    return std::find(set.begin(), set.end(), f) != set.end();
}

static bool set_includes(const std::vector<Formula>& set, const std::vector<Formula>& subset) {
    for (const Formula& f : subset)
        if (!contains(set, f)) return false;
    return true;
}

TEST_CASE("closure saturates with negations") {
    auto cl1 = game::closure(parse("p")).members;
    REQUIRE(cl1.size() == 2);
    CHECK(contains(cl1, parse("p")));
    CHECK(contains(cl1, parse("~p")));

    auto cl2 = game::closure(parse("p | ~p")).members;
    REQUIRE(cl2.size() == 4);
    CHECK(contains(cl2, parse("p | ~p")));
    CHECK(contains(cl2, parse("~(p | ~p)")));

    auto cl3 = game::closure(parse("@[p] q")).members;
    REQUIRE(cl3.size() == 6);
    for (const char* s : {"@[p] q", "~@[p] q", "p", "~p", "q", "~q"}) CHECK(contains(cl3, parse(s)));

    // closure never exceeds twice the subformula count
    for (const char* s : {"@[p] q", "<>(p | q) | @[p & q] <>p", "~~p"}) {
        Formula f = game::to_core(parse(s));
        CHECK(game::closure(f).members.size() <= 2 * subformulas(f).size());
    }
}

TEST_CASE("closure expects pre-expanded input") {
    CHECK_THROWS_AS(game::closure(parse("p & q")), Error);
    CHECK_THROWS_AS(game::closure(parse("p -> q")), Error);
    CHECK_THROWS_AS(game::closure(parse("[]p")), Error);
    // ~(~p | ~q): all six subformulas already closed under negation
    CHECK(game::closure(game::to_core(parse("p & q"))).members.size() == 6);
}

TEST_CASE("hintikka sets of an atom") {
    auto sets = game::hintikka_sets(parse("p"));
    REQUIRE(sets.size() == 2);
    CHECK((contains(sets[0], parse("p")) || contains(sets[1], parse("p"))));
    CHECK((contains(sets[0], parse("~p")) || contains(sets[1], parse("~p"))));
}

TEST_CASE("hintikka sets of a conjunction track truth assignments") {
    // p & q expands to ~(~p | ~q); four assignments, four sets
    auto sets = game::hintikka_sets(parse("p & q"));
    CHECK(sets.size() == 4);
    int with_conjunction = 0;
    for (const auto& s : sets)
        if (contains(s, game::to_core(parse("p & q")))) ++with_conjunction;
    CHECK(with_conjunction == 1);
}

TEST_CASE("the unsatisfiable description example still has its hintikka set") {
    auto sets = game::hintikka_sets(parse("@[~(p | ~p)] true"));
    bool found = false;
    for (const auto& s : sets)
        if (set_includes(s, {parse("p"), parse("p | ~p"), parse("@[~(p | ~p)] true")})) found = true;
    CHECK(found);
}

TEST_CASE("hintikka sets decide each closure formula exactly once") {
    gen::Rng rng(13);
    gen::FormulaOptions o;
    o.allow_dd = true;
    o.max_connectives = 5;
    for (int k = 0; k < 40; ++k) {
        Formula f = game::to_core(gen::random_formula(rng, o));
        auto cl = game::closure(f).members;
        auto sets = game::hintikka_sets(f);
        CHECK(sets.size() <= (std::size_t{1} << subformulas(f).size()));
        for (const auto& s : sets)
            for (const Formula& g : cl) {
                Formula neg = Formula::lnot(g);
                if (contains(cl, neg)) CHECK((contains(s, g) != contains(s, neg)));
            }
    }
}

TEST_CASE("opening moves for satisfiable inputs") {
    game::InitialMoves moves(parse("@[true] true"));
    game::GameConfiguration cfg;
    bool found = false;
    while (moves.next(cfg))
        for (const auto& member : cfg.family)
            if (set_includes(member, {parse("true"), parse("@[true] true")})) found = true;
    CHECK(found);
}

TEST_CASE("no opening move exists for the unsatisfiable description") {
    game::InitialMoves moves(parse("@[~(p | ~p)] true"));
    game::GameConfiguration cfg;
    CHECK_FALSE(moves.next(cfg));
}

TEST_CASE("an atom admits an opening with the empty relation") {
    game::InitialMoves moves(parse("p"));
    game::GameConfiguration cfg;
    bool found = false;
    while (moves.next(cfg)) {
        if (cfg.family.size() == 1 && contains(cfg.family[0], parse("p")) &&
            cfg.family_relation.empty() && cfg.abelard_turns == 0)
            found = true;
    }
    CHECK(found);
}

TEST_CASE("streamed openings satisfy the opening conditions") {
    gen::Rng rng(59);
    gen::FormulaOptions o;
    o.allow_dd = true;
    o.max_connectives = 5;
    int total_seen = 0;
    for (int k = 0; k < 25; ++k) {
        Formula f = gen::random_formula(rng, o);
        Formula core = game::to_core(f);
        auto cl = game::closure(core).members;
        auto descs = dd_set(core);
        game::InitialMoves moves(f);
        game::GameConfiguration cfg;
        int seen = 0;
        while (seen < 200 && moves.next(cfg)) {
            ++seen;
            CHECK(cfg.family.size() <= descs.size() + 1);
            // the input sits in some member
            bool hosts_phi = false;
            for (const auto& member : cfg.family) hosts_phi = hosts_phi || contains(member, core);
            CHECK(hosts_phi);
            // each description in at most one member
            for (const Formula& d : descs) {
                int holders = 0;
                for (const auto& member : cfg.family) holders += contains(member, d);
                CHECK(holders <= 1);
            }
            // @-membership is uniform and matched by a witness member
            for (const Formula& g : cl) {
                if (g.kind() != Kind::Dd) continue;
                bool witnessed = false;
                for (const auto& member : cfg.family)
                    if (contains(member, g.child(0)) && contains(member, g.child(1))) witnessed = true;
                for (const auto& member : cfg.family) CHECK(contains(member, g) == witnessed);
            }
            // the relation respects <>
            for (const auto& [a, b] : cfg.family_relation)
                for (const Formula& g : cl) {
                    if (g.kind() != Kind::Diamond) continue;
                    if (contains(cfg.family[b], g.child(0))) CHECK(contains(cfg.family[a], g));
                }
        }
        total_seen += seen;
    }
    CHECK(total_seen > 0);
}

TEST_CASE("game verdicts on the flagship examples") {
    CHECK(game::eloise_wins(parse("@[true] true")) == game::Verdict::Win);
    CHECK(game::eloise_wins(parse("@[~(p | ~p)] true")) == game::Verdict::Lose);
    CHECK(game::eloise_wins(parse("<>p & @[p] ~p")) == game::Verdict::Lose);
}

TEST_CASE("witness extraction") {
    game::GameSolver one(parse("@[true] true"));
    REQUIRE(one.solve() == game::Verdict::Win);
    auto [m1, w1] = one.extract_model();
    CHECK(m1.worlds.size() == 1);
    CHECK(satisfies(m1, w1, parse("@[true] true")));

    Formula f2 = parse("p & <>q");
    game::GameSolver two(f2);
    REQUIRE(two.solve() == game::Verdict::Win);
    auto [m2, w2] = two.extract_model();
    CHECK(m2.worlds.size() >= 2);
    CHECK_FALSE(m2.relation.empty());
    CHECK(satisfies(m2, w2, f2));

    Formula f3 = parse("@[p] q & <>p");
    game::GameSolver three(f3);
    REQUIRE(three.solve() == game::Verdict::Win);
    auto [m3, w3] = three.extract_model();
    CHECK(satisfies(m3, w3, f3));
    Evaluator ev(m3);
    CHECK(ev.satisfying_worlds(parse("p")).size() == 1);
}

TEST_CASE("full decision with witness") {
    auto res = game::sat_boolean_dd(parse("<><>p"));
    REQUIRE(res.outcome == game::SatResult::Outcome::Sat);
    CHECK(satisfies(res.model, res.world, parse("<><>p")));

    auto res2 = game::sat_boolean_dd(parse("@[~(p | ~p)] true"));
    CHECK(res2.outcome == game::SatResult::Outcome::Unsat);
}

TEST_CASE("non-boolean descriptions are rejected") {
    CHECK_THROWS_AS(game::eloise_wins(parse("@[<>p] q")), Error);
    CHECK_THROWS_AS(game::sat_boolean_dd(parse("@[@[p] q] r")), Error);
    CHECK_THROWS_AS(game::eloise_wins(parse("E>=1 p")), Error);
}

TEST_CASE("oversized inputs exhaust the budget rather than misbehave") {
    // 21 distinct atoms blow the Hintikka universe cap
    Formula big = Formula::prop("a0");
    for (int i = 1; i <= 20; ++i) big = Formula::lor(big, Formula::prop("a" + std::to_string(i)));
    CHECK(game::eloise_wins(big) == game::Verdict::LimitExceeded);
}

TEST_CASE("an exhausted budget is a distinct outcome") {
    game::SearchLimits tiny{3};
    Formula f = parse("<>(p | q) & <>(~p & q) & @[p] (q | <>p)");
    CHECK(game::eloise_wins(f, tiny) == game::Verdict::LimitExceeded);
    auto res = game::sat_boolean_dd(f, tiny);
    CHECK(res.outcome == game::SatResult::Outcome::LimitExceeded);
    // with the default budget the same formula gets a real verdict
    CHECK(game::eloise_wins(f) != game::Verdict::LimitExceeded);
}

TEST_CASE("recorded games respect the turn bound") {
    for (const char* s : {"<><>p & <>q", "p & <>(q & <>p)", "@[p] q & <>p & <><>q"}) {
        Formula f = parse(s);
        game::GameSolver solver(f);
        if (solver.solve() != game::Verdict::Win) continue;
        CHECK(solver.strategy().deepest_turn <= modal_depth(f) + 1);
        CHECK_FALSE(solver.strategy().to_json().empty());
    }
}

TEST_CASE("game agrees with the oracle on random boolean-description formulas") {
    gen::Rng rng(17);
    gen::FormulaOptions o;
    o.allow_dd = true;
    o.max_connectives = 8;
    int sat_count = 0, unsat_count = 0;
    for (int k = 0; k < 120; ++k) {
        Formula f = gen::random_formula(rng, o);
        CAPTURE(print(f));
        auto res = game::sat_boolean_dd(f);
        REQUIRE(res.outcome != game::SatResult::Outcome::LimitExceeded);
        if (res.outcome == game::SatResult::Outcome::Sat) {
            ++sat_count;
            CHECK(satisfies(res.model, res.world, f));
        } else {
            ++unsat_count;
            CHECK(oracle::brute_sat(f, oracle::spec_for(f, 3)).verdict ==
                  oracle::BruteVerdict::NoneWithinBound);
        }
    }
    // the corpus should exercise both verdicts
    CHECK(sat_count > 0);
    CHECK(unsat_count > 0);
}
