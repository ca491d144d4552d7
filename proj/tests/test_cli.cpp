#include <catch2/catch_amalgamated.hpp>

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "mldd/cli.hpp"

using namespace mldd;

namespace {

struct RunResult {
    int code;
    std::string out, err;
};

RunResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(MLDD_FIXTURE_DIR) + "/" + name; }

std::string temp_path(const std::string& name) {
    return std::string("/tmp/mldd_test_") + std::to_string(::getpid()) + "_" + name;
}

}  // namespace

TEST_CASE("parse command") {
    auto res = run({"parse", "@[true] true"});
    CHECK(res.code == 0);
    CHECK(res.out.find("@[true] true") != std::string::npos);
    CHECK(res.out.find("dialect: MLDD") != std::string::npos);

    CHECK(run({"parse", "@'i p"}).out.find("dialect: H_AT") != std::string::npos);
    CHECK(run({"parse", "p | <>q"}).out.find("dialect: ML") != std::string::npos);
    CHECK(run({"parse", "@[p] q & E>=1 p"}).out.find("dialect: mixed") != std::string::npos);

    auto bad = run({"parse", "E>= p"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("error") != std::string::npos);
}

TEST_CASE("check command exit codes") {
    CHECK(run({"check", "--model", fixture("counting_pair_left.json"), "--world", "w1", "E=2 true"}).code == 0);
    CHECK(run({"check", "--model", fixture("counting_pair_right.json"), "--world", "v1", "E=2 true"}).code == 1);
    CHECK(run({"check", "--model", fixture("counting_pair_left.json"), "--world", "zz", "p"}).code == 2);
    CHECK(run({"check", "--model", "/nonexistent.json", "--world", "w", "p"}).code == 2);
}

TEST_CASE("sat with the game engine ships a reusable witness") {
    std::string witness = temp_path("witness.json");
    auto res = run({"sat", "--engine", "game", "--witness", witness, "@[true] true"});
    CHECK(res.code == 0);
    CHECK(res.out.find("SAT") != std::string::npos);
    REQUIRE(res.out.find("world: ") != std::string::npos);
    std::string world = res.out.substr(res.out.find("world: ") + 7);
    world = world.substr(0, world.find('\n'));

    // the emitted file passes validation and reproduces the verdict
    std::ifstream in(witness);
    REQUIRE(in);
    KripkeModel m = model_from_json(nlohmann::json::parse(in));
    CHECK(validate(m).empty());
    CHECK(run({"check", "--model", witness, "--world", world, "@[true] true"}).code == 0);
    std::remove(witness.c_str());
}

TEST_CASE("sat verdicts and gates") {
    CHECK(run({"sat", "--engine", "game", "@[~(p|~p)] true"}).code == 1);
    CHECK(run({"sat", "--engine", "game", "@[<>p] q"}).code == 2);

    auto oracle_res = run({"sat", "--engine", "oracle", "--max-worlds", "3", "@[~(p|~p)] true"});
    CHECK(oracle_res.code == 1);
    CHECK(oracle_res.out.find("NONE-WITHIN-BOUND max_worlds=3") != std::string::npos);

    auto strategy = temp_path("strategy.json");
    auto game_res = run({"sat", "--engine", "game", "--strategy", strategy, "p & <>q"});
    CHECK(game_res.code == 0);
    std::ifstream in(strategy);
    REQUIRE(in);
    nlohmann::json j = nlohmann::json::parse(in);
    CHECK(j.contains("family"));
    CHECK(j.contains("responses"));
    std::remove(strategy.c_str());
}

TEST_CASE("translate command") {
    CHECK(run({"translate", "--dir", "dd-to-mlc", "@[p] q"}).out ==
          "E=1 p & E=1 (p & q)\n");
    CHECK(run({"translate", "--dir", "a-to-dd", "A p"}).out ==
          "@[s | ~p] true & ~s & @[s] true & @[<>s] s\n");
    CHECK(run({"translate", "--dir", "mlc-to-dd-linear", "E>=2 p"}).out ==
          "<>(p & <>p) | @[p & <>p & ~<>(p & <>p)] true\n");
    CHECK(run({"translate", "--dir", "hybrid-to-dd", "@'i p"}).out ==
          "@[p_i] p & @[p_i] true\n");
    CHECK(run({"translate", "--dir", "dd-to-mlc", "'i"}).code == 2);
    CHECK(run({"translate", "--dir", "sideways", "p"}).code == 2);
}

TEST_CASE("bisim command") {
    auto ok = run({"bisim", "--kind", "dd", "--left", fixture("counting_pair_left.json"), "--right",
                   fixture("counting_pair_right.json"), "--relation", fixture("counting_pair_z.json")});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("ok") != std::string::npos);

    auto bad = run({"bisim", "--kind", "mlc", "--left", fixture("counting_pair_left.json"), "--right",
                    fixture("counting_pair_right.json"), "--relation", fixture("counting_pair_z.json")});
    CHECK(bad.code == 1);
    CHECK(bad.out.find("no bijection") != std::string::npos);

    auto found = run({"bisim", "--kind", "h", "--left", fixture("nominal_pair_left.json"), "--right",
                      fixture("nominal_pair_right.json"), "--search", "w", "v"});
    CHECK(found.code == 0);
    CHECK(found.out.find("found") != std::string::npos);
    CHECK(found.out.find("[[\"w\",\"v\"]]") != std::string::npos);

    auto none = run({"bisim", "--kind", "standard", "--left", fixture("nominal_pair_left.json"), "--right",
                     fixture("nominal_pair_right.json"), "--search", "w", "u"});
    CHECK(none.code == 0);  // the isolated world is bisimilar to the nominal world: no props anywhere

    auto missing = run({"bisim", "--kind", "dd", "--left", fixture("counting_pair_left.json"), "--right",
                        fixture("counting_pair_right.json")});
    CHECK(missing.code == 2);
}

TEST_CASE("equiv command round-trips countermodels") {
    CHECK(run({"equiv", "--frames", "all", "--max-size", "4", "@[p] q", "E=1 p & E=1 (p & q)"}).code ==
          0);
    CHECK(run({"equiv", "--frames", "linear", "--max-size", "5", "E>=1 p",
               "<>p | @[p & ~<>p] true"})
              .code == 0);

    std::string counter = temp_path("counter.json");
    auto res = run({"equiv", "--countermodel", counter, "~@[p] q", "@[p] ~q"});
    CHECK(res.code == 1);
    REQUIRE(res.out.find("world: ") != std::string::npos);
    std::string world = res.out.substr(res.out.find("world: ") + 7);
    world = world.substr(0, world.find('\n'));
    CHECK(run({"check", "--model", counter, "--world", world, "~@[p] q"}).code == 0);
    CHECK(run({"check", "--model", counter, "--world", world, "@[p] ~q"}).code == 1);
    std::remove(counter.c_str());
}

TEST_CASE("json reports agree with the text verdicts") {
    auto text = run({"sat", "--engine", "game", "@[true] true"});
    auto json_mode = run({"--json", "sat", "--engine", "game", "@[true] true"});
    CHECK(json_mode.code == text.code);
    nlohmann::json j = nlohmann::json::parse(json_mode.out);
    CHECK(j["verdict"] == "SAT");
    CHECK(j["command"] == "sat");
    CHECK(j.contains("inputs"));
    CHECK(j.contains("elapsed_ms"));
    CHECK(j["model"]["worlds"].size() == 1);

    auto jp = run({"--json", "parse", "E>=2 p"});
    nlohmann::json j2 = nlohmann::json::parse(jp.out);
    CHECK(j2["verdict"] == "E>=2 p");
    CHECK(j2["dialect"] == "MLC");
}

TEST_CASE("search budgets can be exhausted via the environment") {
    ::setenv("MLDD_LIMITS", "2", 1);
    auto res = run({"sat", "--engine", "game", "<>(p | q) & <>(~p & q)"});
    ::unsetenv("MLDD_LIMITS");
    CHECK(res.code == 2);
    CHECK(res.err.find("limit") != std::string::npos);
}

TEST_CASE("flag errors exit with code two") {
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"sat"}).code == 2);
    CHECK(run({"sat", "--engine", "quantum", "p"}).code == 2);
}

TEST_CASE("help is printed and succeeds") {
    auto res = run({"--help"});
    CHECK(res.code == 0);
    CHECK(res.out.find("parse") != std::string::npos);
    CHECK(res.out.find("bisim") != std::string::npos);
}
