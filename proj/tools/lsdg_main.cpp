// Command-line front end: solve / sweep / verify for the scalar linear-state
// impulse game. Exit codes: 0 success, 1 validation or config error,
// 2 boundary-degenerate parameters, 3 verification failure.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lsdg/errors.hpp"
#include "lsdg/exogenous.hpp"
#include "lsdg/fne.hpp"
#include "lsdg/io.hpp"
#include "lsdg/olne.hpp"
#include "lsdg/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitDegenerate = 2;
constexpr int kExitVerifyFailed = 3;

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream os(out_path);
    if (!os) throw lsdg::ConfigError("cannot open output file: " + out_path);
    os << text;
    if (!text.empty() && text.back() != '\n') os << '\n';
}

int run_solve(const std::string& mode, const std::string& config_path,
              const std::string& out_path) {
    const lsdg::CliConfig cfg = lsdg::load_config(config_path);
    lsdg::Json doc;
    if (mode == "exogenous-olne" || mode == "exogenous-fne") {
        const std::vector<double> instants = cfg.instants.value_or(std::vector<double>{});
        const lsdg::ExogenousSolution sol = mode == "exogenous-olne"
                                                ? lsdg::solve_exogenous_olne(cfg.params, instants)
                                                : lsdg::solve_exogenous_fne(cfg.params, instants);
        doc = lsdg::solution_to_json(sol);
    } else if (mode == "olne") {
        doc = lsdg::solution_to_json(lsdg::solve_endogenous_olne(cfg.params));
    } else if (mode == "fne") {
        doc = lsdg::solution_to_json(lsdg::solve_endogenous_fne(cfg.params));
    } else {
        throw lsdg::ConfigError("unknown mode: " + mode);
    }
    emit(doc.dump(2), out_path);
    return kExitOk;
}

int run_sweep(const std::string& mode, const std::string& config_path, const std::string& w2_spec,
              const std::string& s2_spec, const std::string& out_path) {
    const lsdg::CliConfig cfg = lsdg::load_config(config_path);
    const lsdg::SweepRange w2_range = lsdg::SweepRange::parse(w2_spec);
    const lsdg::SweepRange s2_range = lsdg::SweepRange::parse(s2_spec);
    std::ostringstream os;
    lsdg::run_sweep_csv(os, cfg.params, w2_range, s2_range, mode);
    emit(os.str(), out_path);
    return kExitOk;
}

// Compares a previously exported solution file against a fresh solve.
bool verify_solution_file(const lsdg::GameParameters& p, const std::string& path,
                          std::vector<lsdg::CheckResult>& checks) {
    std::ifstream in(path);
    if (!in) throw lsdg::ConfigError("cannot open solution file: " + path);
    lsdg::Json doc;
    try {
        doc = lsdg::Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw lsdg::ConfigError(std::string("invalid solution JSON: ") + e.what());
    }

    const std::string kind = doc.value("kind", "");
    lsdg::Json expected;
    if (kind == "olne") {
        expected = lsdg::solution_to_json(lsdg::solve_endogenous_olne(p));
    } else if (kind == "fne") {
        expected = lsdg::solution_to_json(lsdg::solve_endogenous_fne(p));
    } else {
        throw lsdg::ConfigError("solution file must carry kind olne or fne");
    }

    bool ok = doc.value("k", -1) == expected.value("k", -2);
    const auto& sched = doc.contains("schedule") ? doc.at("schedule") : lsdg::Json::array();
    const auto& esched = expected.at("schedule");
    if (sched.size() != esched.size()) ok = false;
    for (std::size_t i = 0; ok && i < sched.size(); ++i) {
        const double dt = std::abs(sched[i].value("instant", 0.0) -
                                   esched[i].value("instant", 0.0));
        const double dv = std::abs(sched[i].value("level", 0.0) - esched[i].value("level", 0.0));
        if (dt > 1e-9 || dv > 1e-9) ok = false;
    }
    checks.push_back({"solution-file." + kind, ok,
                      ok ? "matches a fresh solve" : "does not match a fresh solve"});
    return ok;
}

int run_verify(const std::string& config_path, const std::string& suite, std::uint64_t seed,
               const std::string& solution_path, const std::string& out_path) {
    const lsdg::CliConfig cfg = lsdg::load_config(config_path);
    std::vector<lsdg::CheckResult> checks =
        lsdg::run_verification_suite(cfg.params, cfg.instants, suite, seed);
    if (!solution_path.empty()) {
        verify_solution_file(cfg.params, solution_path, checks);
    }
    const lsdg::Json doc = lsdg::checks_to_json(checks);
    emit(doc.dump(2), out_path);
    for (const auto& c : checks) {
        if (!c.passed) {
            std::cerr << "verification failed: " << c.name << " (" << c.detail << ")\n";
            return kExitVerifyFailed;
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"solver for scalar two-player linear-state differential games "
                 "with impulse control"};
    app.require_subcommand(1);

    std::string config_path, out_path, mode, w2_spec, s2_spec;
    std::string suite = "all";
    std::string solution_path;
    std::uint64_t seed = 42;

    CLI::App* solve = app.add_subcommand("solve", "compute an equilibrium and write it as JSON");
    solve->add_option("--mode", mode, "exogenous-olne|exogenous-fne|olne|fne")->required();
    solve->add_option("--config", config_path, "config JSON path")->required();
    solve->add_option("--out", out_path, "output path (stdout when omitted)");

    CLI::App* sweep = app.add_subcommand("sweep", "classify a (w2,s2) grid and write CSV");
    sweep->add_option("--mode", mode, "olne|fne")->required();
    sweep->add_option("--config", config_path, "config JSON path")->required();
    sweep->add_option("--w2", w2_spec, "w2 range min:max:n")->required();
    sweep->add_option("--s2", s2_spec, "s2 range min:max:n")->required();
    sweep->add_option("--out", out_path, "output path (stdout when omitted)");

    CLI::App* verify = app.add_subcommand("verify", "run the oracle suites");
    verify->add_option("--config", config_path, "config JSON path")->required();
    verify->add_option("--suite", suite, "all|olne|fne|exogenous");
    verify->add_option("--seed", seed, "seed for randomized checks");
    verify->add_option("--solution", solution_path, "solution JSON to check against a fresh solve");
    verify->add_option("--out", out_path, "output path (stdout when omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return run_solve(mode, config_path, out_path);
        if (sweep->parsed()) return run_sweep(mode, config_path, w2_spec, s2_spec, out_path);
        if (verify->parsed()) return run_verify(config_path, suite, seed, solution_path, out_path);
    } catch (const lsdg::BoundaryDegenerate& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDegenerate;
    } catch (const lsdg::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return kExitValidation;
}
