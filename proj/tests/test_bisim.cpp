#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "mldd/bisim.hpp"
#include "mldd/eval.hpp"
#include "mldd/kripke.hpp"
#include "mldd/parse.hpp"
#include "mldd/print.hpp"
#include "support/gen.hpp"

using namespace mldd;
using bisim::BisimKind;
using bisim::BisimRelation;

static std::string slurp_fixture(const std::string& name) {
    std::ifstream in(std::string(MLDD_FIXTURE_DIR) + "/" + name);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

static KripkeModel load_model(const std::string& name) {
    return model_from_json(nlohmann::json::parse(slurp_fixture(name)));
}

static BisimRelation load_relation(const std::string& name) {
    return bisim::relation_from_json(nlohmann::json::parse(slurp_fixture(name)));
}

static bool has_condition(const std::vector<bisim::Violation>& vs, const std::string& cond) {
    for (const auto& v : vs)
        if (v.condition == cond) return true;
    return false;
}

TEST_CASE("two bare worlds against three: description kind passes, counting kind fails") {
    KripkeModel left = load_model("counting_pair_left.json");
    KripkeModel right = load_model("counting_pair_right.json");
    BisimRelation z = load_relation("counting_pair_z.json");

    CHECK(bisim::check_bisim(BisimKind::DD, left, right, z).empty());
    CHECK(bisim::check_bisim(BisimKind::Standard, left, right, z).empty());
    auto mlc = bisim::check_bisim(BisimKind::MLC, left, right, z);
    REQUIRE_FALSE(mlc.empty());
    CHECK(has_condition(mlc, "bijection"));
    CHECK(mlc.front().detail.find("no bijection") != std::string::npos);
}

TEST_CASE("nominal singleton against a model with an isolated extra world") {
    KripkeModel left = load_model("nominal_pair_left.json");
    KripkeModel right = load_model("nominal_pair_right.json");
    BisimRelation z = load_relation("nominal_pair_z.json");

    CHECK(bisim::check_bisim(BisimKind::Hybrid, left, right, z).empty());
    auto dd = bisim::check_bisim(BisimKind::DD, left, right, z);
    REQUIRE_FALSE(dd.empty());
    CHECK(has_condition(dd, "surjective"));
    CHECK(dd.front().detail.find("not surjective") != std::string::npos);
}

TEST_CASE("separating formulas across the fixture pairs") {
    KripkeModel l4 = load_model("counting_pair_left.json"), r4 = load_model("counting_pair_right.json");
    CHECK(satisfies(l4, "w1", parse("E=2 true")));
    CHECK_FALSE(satisfies(r4, "v1", parse("E=2 true")));

    KripkeModel l3 = load_model("nominal_pair_left.json"), r3 = load_model("nominal_pair_right.json");
    CHECK(satisfies(l3, "w", parse("@[true] true")));
    CHECK_FALSE(satisfies(r3, "v", parse("@[true] true")));
}

TEST_CASE("ill-typed pairs are errors") {
    KripkeModel left = load_model("counting_pair_left.json");
    KripkeModel right = load_model("counting_pair_right.json");
    BisimRelation z;
    z.pairs = {{"w1", "nowhere"}};
    CHECK_THROWS_AS(bisim::check_bisim(BisimKind::Standard, left, right, z), Error);
}

TEST_CASE("searching finds relating bisimulations") {
    KripkeModel l4 = load_model("counting_pair_left.json"), r4 = load_model("counting_pair_right.json");
    auto res = bisim::find_bisim(BisimKind::DD, l4, "w1", r4, "v1");
    REQUIRE(res.outcome == bisim::FindResult::Outcome::Found);
    CHECK(bisim::check_bisim(BisimKind::DD, l4, r4, res.relation).empty());
    bool has_start = false;
    for (const auto& p : res.relation.pairs)
        if (p == std::make_pair(std::string("w1"), std::string("v1"))) has_start = true;
    CHECK(has_start);

    // two isomorphic chains under the description kind
    KripkeModel a, b;
    a.worlds = {"a0", "a1"};
    a.relation = {{"a0", "a1"}};
    a.valuation["p"] = {"a1"};
    b.worlds = {"b0", "b1"};
    b.relation = {{"b0", "b1"}};
    b.valuation["p"] = {"b1"};
    auto iso = bisim::find_bisim(BisimKind::DD, a, "a0", b, "b0");
    REQUIRE(iso.outcome == bisim::FindResult::Outcome::Found);
    REQUIRE(iso.relation.pairs.size() == 2);
    CHECK(bisim::check_bisim(BisimKind::DD, a, b, iso.relation).empty());

    // differing atoms: nothing to find
    KripkeModel pw, npw;
    pw.worlds = {"w"};
    pw.valuation["p"] = {"w"};
    npw.worlds = {"v"};
    CHECK(bisim::find_bisim(BisimKind::Standard, pw, "w", npw, "v").outcome ==
          bisim::FindResult::Outcome::None);
}

TEST_CASE("hybrid search returns exactly the nominal pair on the fixture") {
    KripkeModel l3 = load_model("nominal_pair_left.json"), r3 = load_model("nominal_pair_right.json");
    auto res = bisim::find_bisim(BisimKind::Hybrid, l3, "w", r3, "v");
    REQUIRE(res.outcome == bisim::FindResult::Outcome::Found);
    REQUIRE(res.relation.pairs.size() == 1);
    CHECK(res.relation.pairs[0] == std::make_pair(std::string("w"), std::string("v")));
}

TEST_CASE("search respects the candidate cap") {
    KripkeModel l4 = load_model("counting_pair_left.json"), r4 = load_model("counting_pair_right.json");
    bisim::SearchLimits tiny{2};
    auto res = bisim::find_bisim(BisimKind::DD, l4, "w1", r4, "v1", tiny);
    CHECK(res.outcome == bisim::FindResult::Outcome::LimitExceeded);
}

TEST_CASE("passing a stricter kind implies passing the standard one") {
    gen::Rng rng(37);
    for (int k = 0; k < 60; ++k) {
        KripkeModel a = gen::random_model(rng, 3, {"p"});
        KripkeModel b = gen::random_model(rng, 3, {"p"});
        BisimRelation z;
        for (const auto& u : a.worlds)
            for (const auto& v : b.worlds)
                if (gen::pick(rng, 2)) z.pairs.emplace_back(u, v);
        for (BisimKind kind : {BisimKind::DD, BisimKind::Hybrid, BisimKind::MLC})
            if (bisim::check_bisim(kind, a, b, z).empty())
                CHECK(bisim::check_bisim(BisimKind::Standard, a, b, z).empty());
    }
}

TEST_CASE("the singular condition is symmetric under transposition") {
    gen::Rng rng(41);
    for (int k = 0; k < 60; ++k) {
        KripkeModel a = gen::random_model(rng, 3, {"p"});
        KripkeModel b = gen::random_model(rng, 3, {"p"});
        BisimRelation z, zt;
        for (const auto& u : a.worlds)
            for (const auto& v : b.worlds)
                if (gen::pick(rng, 2)) {
                    z.pairs.emplace_back(u, v);
                    zt.pairs.emplace_back(v, u);
                }
        auto count_singular = [](const std::vector<bisim::Violation>& vs) {
            std::size_t n = 0;
            for (const auto& v : vs) n += v.condition == "singular";
            return n;
        };
        CHECK(count_singular(bisim::check_bisim(BisimKind::DD, a, b, z)) ==
              count_singular(bisim::check_bisim(BisimKind::DD, b, a, zt)));
    }
}

TEST_CASE("found description bisimulations make formulas invariant") {
    gen::Rng rng(43);
    gen::FormulaOptions o;
    o.allow_dd = true;
    o.max_connectives = 8;
    int found = 0;
    for (int k = 0; k < 40 && found < 20; ++k) {
        gen::DdPair pair = gen::random_dd_pair(rng, {"p", "q"});
        auto res = bisim::find_bisim(BisimKind::DD, pair.left, pair.start_left, pair.right,
                                     pair.start_right);
        if (res.outcome != bisim::FindResult::Outcome::Found) continue;
        ++found;
        std::vector<Formula> probes;
        for (int j = 0; j < 100; ++j) probes.push_back(gen::random_formula(rng, o));
        auto disagreements = bisim::invariance_probe(BisimKind::DD, pair.left, pair.start_left,
                                                     pair.right, pair.start_right, res.relation,
                                                     probes);
        CHECK(disagreements.empty());
    }
    CHECK(found >= 20);
}

TEST_CASE("probe preconditions are enforced") {
    KripkeModel l4 = load_model("counting_pair_left.json"), r4 = load_model("counting_pair_right.json");
    BisimRelation z = load_relation("counting_pair_z.json");
    // formulas outside the kind's dialect are rejected
    CHECK_THROWS_AS(bisim::invariance_probe(BisimKind::DD, l4, "w1", r4, "v1", z,
                                            {parse("E=2 true")}),
                    Error);
    // relations that are not bisimulations of the kind are rejected
    CHECK_THROWS_AS(bisim::invariance_probe(BisimKind::MLC, l4, "w1", r4, "v1", z,
                                            {parse("E=2 true")}),
                    Error);
    // unrelated designated worlds are rejected
    BisimRelation small;
    small.pairs = {{"w2", "v1"}};
    CHECK_THROWS_AS(bisim::invariance_probe(BisimKind::Standard, l4, "w1", r4, "v1", small,
                                            {parse("p")}),
                    Error);
}

TEST_CASE("relation files round-trip") {
    BisimRelation z = load_relation("counting_pair_z.json");
    CHECK(z.pairs.size() == 6);
    BisimRelation back = bisim::relation_from_json(bisim::relation_to_json(z));
    CHECK(back.pairs == z.pairs);
    CHECK_THROWS_AS(bisim::relation_from_json(nlohmann::json::object()), Error);
}
