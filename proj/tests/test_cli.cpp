// End-to-end checks of the lsdg binary: exit codes, output schemas and
// determinism. The binary path comes from the build system.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "lsdg/errors.hpp"
#include "lsdg/fne.hpp"
#include "lsdg/olne.hpp"
#include "lsdg/params.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args, const fs::path& stdout_path) {
    const std::string command =
        std::string(LSDG_CLI_PATH) + " " + args + " > " + stdout_path.string() + " 2>&1";
    const int status = std::system(command.c_str());
    RunResult r;
    r.exit_code = WEXITSTATUS(status);
    std::ifstream in(stdout_path);
    std::ostringstream os;
    os << in.rdbuf();
    r.output = os.str();
    return r;
}

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "lsdg_cli_tests";
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream os(path);
    os << text;
}

const char* kSharedConfig = R"({
  "params": {
    "A": 0.5, "B": 1.0, "Q": 1.0,
    "w1": 1.0, "R1": -1.0, "q1": 1.25, "s1": 1.0,
    "w2": 1.0, "P2": -1.0, "C": -0.125, "s2": 0.0,
    "T": 1.0, "x0": 0.0
  },
  "instants": [0.3, 0.7]
})";

}  // namespace

TEST_CASE("solve writes a JSON solution and exits 0") {
    const fs::path dir = scratch_dir();
    write_file(dir / "config.json", kSharedConfig);
    const fs::path out = dir / "solution.json";

    for (const std::string mode : {"exogenous-olne", "exogenous-fne", "olne", "fne"}) {
        const RunResult r = run_cli("solve --mode " + mode + " --config " +
                                        (dir / "config.json").string() + " --out " + out.string(),
                                    dir / "stdout.txt");
        REQUIRE(r.exit_code == 0);
        std::ifstream in(out);
        const nlohmann::json doc = nlohmann::json::parse(in);
        CHECK(doc.contains("k"));
        CHECK(doc.contains("schedule"));
        CHECK(doc.at("control").contains("segments"));
    }
}

TEST_CASE("validation failures exit 1 and name the field") {
    const fs::path dir = scratch_dir();
    write_file(dir / "bad_sign.json", R"({"params": {
        "A": 0.5, "B": 1.0, "Q": 1.0, "w1": 0.0, "R1": 1.0, "q1": 0.0, "s1": 0.0,
        "w2": 0.0, "P2": -1.0, "C": -0.125, "s2": 0.0, "T": 1.0, "x0": 0.0}})");
    const RunResult r = run_cli(
        "solve --mode fne --config " + (dir / "bad_sign.json").string(), dir / "stdout.txt");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("R1") != std::string::npos);
}

TEST_CASE("unknown parameter fields exit 1") {
    const fs::path dir = scratch_dir();
    write_file(dir / "unknown.json", R"({"params": {
        "A": 0.5, "B": 1.0, "Q": 1.0, "w1": 0.0, "R1": -1.0, "q1": 0.0, "s1": 0.0,
        "w2": 0.0, "P2": -1.0, "C": -0.125, "s2": 0.0, "T": 1.0, "x0": 0.0,
        "extra": 3.0}})");
    const RunResult r = run_cli(
        "solve --mode olne --config " + (dir / "unknown.json").string(), dir / "stdout.txt");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("extra") != std::string::npos);
}

TEST_CASE("boundary-degenerate parameters exit 2") {
    const fs::path dir = scratch_dir();
    // A s2 + w2 = q1 delta exactly: the open-loop instant would sit at T
    write_file(dir / "degenerate.json", R"({"params": {
        "A": 0.5, "B": 1.0, "Q": 1.0, "w1": 1.0, "R1": -1.0, "q1": 1.25, "s1": 1.0,
        "w2": 1.25, "P2": -1.0, "C": -0.125, "s2": 0.0, "T": 1.0, "x0": 0.0}})");
    const RunResult r = run_cli(
        "solve --mode olne --config " + (dir / "degenerate.json").string(), dir / "stdout.txt");
    CHECK(r.exit_code == 2);
}

TEST_CASE("sweep emits the documented CSV and agrees with the classifiers") {
    const fs::path dir = scratch_dir();
    write_file(dir / "config.json", kSharedConfig);
    const fs::path out = dir / "sweep.csv";

    const RunResult r = run_cli("sweep --mode olne --config " + (dir / "config.json").string() +
                                    " --w2 -2:2:21 --s2 -2:2:21 --out " + out.string(),
                                dir / "stdout.txt");
    REQUIRE(r.exit_code == 0);

    std::ifstream in(out);
    std::string header;
    std::getline(in, header);
    CHECK(header == "w2,s2,regime_label,k");

    int rows = 0;
    std::string line;
    while (std::getline(in, line)) {
        ++rows;
        std::istringstream fields(line);
        std::string w2s, s2s, label, ks;
        std::getline(fields, w2s, ',');
        std::getline(fields, s2s, ',');
        std::getline(fields, label, ',');
        std::getline(fields, ks, ',');

        lsdg::GameParameters p;
        p.A = 0.5;
        p.B = 1.0;
        p.Q = 1.0;
        p.w1 = 1.0;
        p.R1 = -1.0;
        p.q1 = 1.25;
        p.s1 = 1.0;
        p.P2 = -1.0;
        p.C = -0.125;
        p.T = 1.0;
        p.w2 = std::stod(w2s);
        p.s2 = std::stod(s2s);
        try {
            const lsdg::OlneRegime regime = lsdg::classify_olne_regime(p);
            CHECK(label == lsdg::to_string(regime.label));
            CHECK(std::stoi(ks) == (regime.admits_impulse() ? 1 : 0));
        } catch (const lsdg::BoundaryDegenerate&) {
            CHECK(label == "degenerate");
            CHECK(std::stoi(ks) == -1);
        }
    }
    CHECK(rows == 21 * 21);
}

TEST_CASE("sweeps are deterministic and zero-area ranges yield an empty body") {
    const fs::path dir = scratch_dir();
    write_file(dir / "config.json", kSharedConfig);

    const RunResult a = run_cli("sweep --mode fne --config " + (dir / "config.json").string() +
                                    " --w2 -1:1:13 --s2 -1:1:13",
                                dir / "a.txt");
    const RunResult b = run_cli("sweep --mode fne --config " + (dir / "config.json").string() +
                                    " --w2 -1:1:13 --s2 -1:1:13",
                                dir / "b.txt");
    REQUIRE(a.exit_code == 0);
    CHECK(a.output == b.output);

    const RunResult empty = run_cli("sweep --mode fne --config " +
                                        (dir / "config.json").string() + " --w2 0:1:0 --s2 0:1:5",
                                    dir / "empty.txt");
    CHECK(empty.exit_code == 0);
    CHECK(empty.output == "w2,s2,regime_label,k\n");
}

TEST_CASE("verify exits 0 on the shared instance and 3 on a corrupted solution") {
    const fs::path dir = scratch_dir();
    write_file(dir / "config.json", kSharedConfig);

    const RunResult ok = run_cli("verify --config " + (dir / "config.json").string() +
                                     " --suite exogenous --seed 5",
                                 dir / "verify.txt");
    CHECK(ok.exit_code == 0);

    // export a solution, corrupt its level, and check the negative control
    const fs::path sol_path = dir / "fne.json";
    REQUIRE(run_cli("solve --mode fne --config " + (dir / "config.json").string() + " --out " +
                        sol_path.string(),
                    dir / "stdout.txt")
                .exit_code == 0);
    const RunResult match = run_cli("verify --config " + (dir / "config.json").string() +
                                        " --suite fne --solution " + sol_path.string(),
                                    dir / "verify2.txt");
    CHECK(match.exit_code == 0);

    std::ifstream in(sol_path);
    nlohmann::json doc = nlohmann::json::parse(in);
    doc["schedule"][0]["level"] = 0.75;  // corrupt
    write_file(sol_path, doc.dump());
    const RunResult bad = run_cli("verify --config " + (dir / "config.json").string() +
                                      " --suite fne --solution " + sol_path.string(),
                                  dir / "verify3.txt");
    CHECK(bad.exit_code == 3);
}

TEST_CASE("solve outputs are byte-identical across runs") {
    const fs::path dir = scratch_dir();
    write_file(dir / "config.json", kSharedConfig);
    const RunResult a =
        run_cli("solve --mode fne --config " + (dir / "config.json").string(), dir / "a.json");
    const RunResult b =
        run_cli("solve --mode fne --config " + (dir / "config.json").string(), dir / "b.json");
    REQUIRE(a.exit_code == 0);
    CHECK(a.output == b.output);
}
