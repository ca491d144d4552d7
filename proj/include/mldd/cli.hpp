// Command-line front end. Exit codes are uniform across subcommands:
// 0 positive verdict, 1 negative verdict, 2 error or exhausted budget.
// Every command takes --json for a machine-readable report; both forms carry
// the same verdict string. MLDD_LIMITS overrides the default search budget.

#ifndef MLDD_CLI_HPP
#define MLDD_CLI_HPP

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mldd/bisim.hpp"
#include "mldd/eval.hpp"
#include "mldd/formula.hpp"
#include "mldd/game.hpp"
#include "mldd/kripke.hpp"
#include "mldd/oracle.hpp"
#include "mldd/parse.hpp"
#include "mldd/print.hpp"
#include "mldd/translate.hpp"

namespace mldd {
namespace cli {

namespace cdetail {

inline std::uint64_t fnv(const std::string& data, std::uint64_t h = 1469598103934665603ull) {
    for (char c : data) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hex(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline KripkeModel load_model(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(slurp(path));
    } catch (const nlohmann::json::exception& e) {
        throw Error("'" + path + "': " + e.what());
    }
    return model_from_json(j);
}

inline void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    out << data;
}

struct Report {
    std::string command;
    std::uint64_t digest = 1469598103934665603ull;
    std::string verdict;
    std::vector<std::string> lines;          // human-readable payload
    std::vector<std::string> witness_paths;  // files written
    nlohmann::json extra = nlohmann::json::object();
    std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

    void input(const std::string& data) { digest = fnv(data, digest); }

    int emit(bool json, std::ostream& out, int code) const {
        if (json) {
            nlohmann::json j = extra;
            j["command"] = command;
            j["inputs"] = {{"digest", hex(digest)}};
            j["verdict"] = verdict;
            j["witness"] = witness_paths;
            auto elapsed = std::chrono::steady_clock::now() - started;
            j["elapsed_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
            out << j.dump(2) << "\n";
        } else {
            out << verdict << "\n";
            for (const auto& line : lines) out << line << "\n";
        }
        return code;
    }
};

inline std::uint64_t default_budget() {
    if (const char* env = std::getenv("MLDD_LIMITS")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 50'000'000;
}

inline FrameClass frame_of(const std::string& name) {
    if (name == "all") return FrameClass::All;
    if (name == "linear") return FrameClass::Linear;
    if (name == "fsto") return FrameClass::FiniteStrictTotalOrder;
    throw Error("unknown frame class '" + name + "'");
}

inline bisim::BisimKind bisim_kind_of(const std::string& name) {
    if (name == "standard") return bisim::BisimKind::Standard;
    if (name == "dd") return bisim::BisimKind::DD;
    if (name == "h") return bisim::BisimKind::Hybrid;
    if (name == "mlc") return bisim::BisimKind::MLC;
    throw Error("unknown bisimulation kind '" + name + "'");
}

}  // namespace cdetail

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    using cdetail::Report;

    CLI::App app{"workbench for modal logic with definite descriptions"};
    app.require_subcommand(1);
    bool json = false;
    app.add_flag("--json", json, "emit a machine-readable report");

    std::string formula_text, formula_text2;
    std::string model_path, world;
    std::string engine = "game";
    unsigned max_worlds = 4;
    std::uint64_t max_nodes = cdetail::default_budget();
    std::string witness_path, strategy_path;
    std::string direction;
    std::string kind = "standard", left_path, right_path, relation_path, out_path;
    std::vector<std::string> search_worlds;
    std::string frames = "all";
    unsigned max_size = 4;
    std::string countermodel_path;

    auto* cmd_parse = app.add_subcommand("parse", "parse a formula, print its canonical form and dialect");
    cmd_parse->add_option("formula", formula_text, "formula text")->required();

    auto* cmd_check = app.add_subcommand("check", "evaluate a formula at a world of a model");
    cmd_check->add_option("--model", model_path, "model file (JSON)")->required();
    cmd_check->add_option("--world", world, "world id")->required();
    cmd_check->add_option("formula", formula_text, "formula text")->required();

    auto* cmd_sat = app.add_subcommand("sat", "decide satisfiability");
    cmd_sat->add_option("--engine", engine, "game | oracle")->check(CLI::IsMember({"game", "oracle"}));
    cmd_sat->add_option("--max-worlds", max_worlds, "oracle world bound (default 4)");
    cmd_sat->add_option("--max-nodes", max_nodes, "search budget");
    cmd_sat->add_option("--witness", witness_path, "write the witness model here");
    cmd_sat->add_option("--strategy", strategy_path, "write the winning strategy here (game engine)");
    cmd_sat->add_option("formula", formula_text, "formula text")->required();

    auto* cmd_translate = app.add_subcommand("translate", "translate between the logics");
    cmd_translate
        ->add_option("--dir", direction,
                     "dd-to-mlc | dd-to-mlc-diff | hybrid-to-dd | a-to-dd | mlc-to-dd-linear")
        ->required();
    cmd_translate->add_option("formula", formula_text, "formula text")->required();

    auto* cmd_bisim = app.add_subcommand("bisim", "check or search bisimulations");
    cmd_bisim->add_option("--kind", kind, "standard | dd | h | mlc");
    cmd_bisim->add_option("--left", left_path, "left model file")->required();
    cmd_bisim->add_option("--right", right_path, "right model file")->required();
    cmd_bisim->add_option("--relation", relation_path, "relation file to check");
    cmd_bisim->add_option("--search", search_worlds, "two world ids: search for a relating bisimulation")
        ->expected(2);
    cmd_bisim->add_option("--out", out_path, "write the found relation here");
    cmd_bisim->add_option("--max-nodes", max_nodes, "search budget");

    auto* cmd_equiv = app.add_subcommand("equiv", "bounded pointwise equivalence of two formulas");
    cmd_equiv->add_option("--frames", frames, "all | linear | fsto");
    cmd_equiv->add_option("--max-size", max_size, "world bound (default 4)");
    cmd_equiv->add_option("--countermodel", countermodel_path, "write a countermodel here");
    cmd_equiv->add_option("formula", formula_text, "first formula")->required();
    cmd_equiv->add_option("formula2", formula_text2, "second formula")->required();

    std::vector<const char*> argv;
    argv.push_back("mldd");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (cmd_parse->parsed()) {
            Report report;
            report.command = "parse";
            report.input(formula_text);
            Formula f = parse(formula_text);
            auto dialect = classify_dialect(f);
            std::string dialect_text = dialect ? dialect_name(*dialect) : "mixed";
            report.verdict = print(f);
            report.lines.push_back("dialect: " + dialect_text);
            report.extra["dialect"] = dialect_text;
            return report.emit(json, out, 0);
        }

        if (cmd_check->parsed()) {
            Report report;
            report.command = "check";
            report.input(cdetail::slurp(model_path));
            report.input(world);
            report.input(formula_text);
            KripkeModel m = cdetail::load_model(model_path);
            auto violations = validate(m);
            if (!violations.empty()) throw Error("invalid model: " + violations.front());
            Formula f = parse(formula_text);
            bool holds = satisfies(m, world, f);
            report.verdict = holds ? "true" : "false";
            return report.emit(json, out, holds ? 0 : 1);
        }

        if (cmd_sat->parsed()) {
            Report report;
            report.command = "sat";
            report.input(engine);
            report.input(formula_text);
            Formula f = parse(formula_text);
            KripkeModel model;
            std::string start;
            bool sat = false;
            if (engine == "game") {
                game::GameSolver solver(f, game::SearchLimits{max_nodes});
                game::Verdict v = solver.solve();
                if (v == game::Verdict::LimitExceeded) throw LimitExceeded("game search budget exhausted");
                sat = v == game::Verdict::Win;
                if (sat) {
                    std::tie(model, start) = solver.extract_model();
                    if (!strategy_path.empty()) {
                        cdetail::write_file(strategy_path, solver.strategy().to_json().dump(2) + "\n");
                        report.witness_paths.push_back(strategy_path);
                    }
                }
                report.verdict = sat ? "SAT" : "UNSAT";
            } else {
                oracle::EnumerationSpec spec = oracle::spec_for(f, max_worlds);
                oracle::BruteResult res = oracle::brute_sat(f, spec);
                sat = res.verdict == oracle::BruteVerdict::Sat;
                if (sat) {
                    model = std::move(res.model);
                    start = res.world;
                }
                report.verdict =
                    sat ? "SAT" : "NONE-WITHIN-BOUND max_worlds=" + std::to_string(max_worlds);
            }
            if (sat) {
                if (!satisfies(model, start, f)) throw Error("internal: witness failed verification");
                report.lines.push_back("world: " + start);
                report.extra["world"] = start;
                nlohmann::json jm = to_json(model);
                report.extra["model"] = jm;
                if (!witness_path.empty()) {
                    cdetail::write_file(witness_path, jm.dump(2) + "\n");
                    report.witness_paths.push_back(witness_path);
                    report.lines.push_back("witness: " + witness_path);
                } else if (!json) {
                    report.lines.push_back(jm.dump());
                }
            }
            return report.emit(json, out, sat ? 0 : 1);
        }

        if (cmd_translate->parsed()) {
            Report report;
            report.command = "translate";
            report.input(direction);
            report.input(formula_text);
            Formula f = parse(formula_text);
            Formula image;
            if (direction == "dd-to-mlc")
                image = dd_to_mlc(f);
            else if (direction == "dd-to-mlc-diff")
                image = dd_to_mlc_via_diff(f);
            else if (direction == "hybrid-to-dd")
                image = hybrid_to_dd(f);
            else if (direction == "a-to-dd")
                image = univ_to_dd(f);
            else if (direction == "mlc-to-dd-linear")
                image = mlc_to_dd_linear(f);
            else
                throw Error("unknown direction '" + direction + "'");
            report.verdict = print(image);
            return report.emit(json, out, 0);
        }

        if (cmd_bisim->parsed()) {
            Report report;
            report.command = "bisim";
            report.input(kind);
            report.input(cdetail::slurp(left_path));
            report.input(cdetail::slurp(right_path));
            bisim::BisimKind bk = cdetail::bisim_kind_of(kind);
            KripkeModel left = cdetail::load_model(left_path);
            KripkeModel right = cdetail::load_model(right_path);
            if (!relation_path.empty()) {
                report.input(cdetail::slurp(relation_path));
                bisim::BisimRelation z =
                    bisim::relation_from_json(nlohmann::json::parse(cdetail::slurp(relation_path)));
                auto violations = bisim::check_bisim(bk, left, right, z);
                report.verdict = violations.empty() ? "ok" : "violations";
                nlohmann::json jv = nlohmann::json::array();
                for (const auto& v : violations) {
                    report.lines.push_back(v.condition + ": " + v.detail);
                    jv.push_back({{"condition", v.condition}, {"detail", v.detail}});
                }
                report.extra["violations"] = jv;
                return report.emit(json, out, violations.empty() ? 0 : 1);
            }
            if (search_worlds.size() == 2) {
                report.input(search_worlds[0]);
                report.input(search_worlds[1]);
                bisim::FindResult res = bisim::find_bisim(bk, left, search_worlds[0], right,
                                                          search_worlds[1], bisim::SearchLimits{max_nodes});
                if (res.outcome == bisim::FindResult::Outcome::LimitExceeded)
                    throw LimitExceeded("bisimulation search budget exhausted");
                bool found = res.outcome == bisim::FindResult::Outcome::Found;
                report.verdict = found ? "found" : "none";
                if (found) {
                    nlohmann::json jz = bisim::relation_to_json(res.relation);
                    report.extra["relation"] = jz;
                    if (!out_path.empty()) {
                        cdetail::write_file(out_path, jz.dump(2) + "\n");
                        report.witness_paths.push_back(out_path);
                    } else if (!json) {
                        report.lines.push_back(jz.dump());
                    }
                }
                return report.emit(json, out, found ? 0 : 1);
            }
            throw Error("bisim: pass --relation FILE or --search W W'");
        }

        if (cmd_equiv->parsed()) {
            Report report;
            report.command = "equiv";
            report.input(frames);
            report.input(formula_text);
            report.input(formula_text2);
            Formula f = parse(formula_text);
            Formula g = parse(formula_text2);
            oracle::EnumerationSpec spec;
            spec.max_worlds = max_size;
            spec.frame = cdetail::frame_of(frames);
            for (const auto& p : prop_names(Formula::land(f, g))) spec.props.push_back(p);
            for (const auto& i : nominal_names(Formula::land(f, g))) spec.nominals.push_back(i);
            oracle::EquivResult res = oracle::equivalent_upto(f, g, spec);
            report.verdict = res.equivalent ? "equivalent" : "countermodel";
            if (!res.equivalent) {
                report.lines.push_back("world: " + res.world);
                report.extra["world"] = res.world;
                nlohmann::json jm = to_json(res.model);
                report.extra["model"] = jm;
                if (!countermodel_path.empty()) {
                    cdetail::write_file(countermodel_path, jm.dump(2) + "\n");
                    report.witness_paths.push_back(countermodel_path);
                } else if (!json) {
                    report.lines.push_back(jm.dump());
                }
            }
            return report.emit(json, out, res.equivalent ? 0 : 1);
        }
    } catch (const LimitExceeded& e) {
        err << "limit: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "error: no subcommand\n";
    return 2;
}

}  // namespace cli
}  // namespace mldd

#endif  // MLDD_CLI_HPP
