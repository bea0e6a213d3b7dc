// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "tsvar/cli.hpp"
#include "tsvar/problem_file.hpp"

using tsvar::CliOptions;
using tsvar::ProblemFileData;
using tsvar::run_cli;

namespace {

#ifndef TSVAR_PROBLEMS_DIR
#define TSVAR_PROBLEMS_DIR "problems"
#endif

std::string fixture_path() {
    return std::string(TSVAR_PROBLEMS_DIR) + "/double_well.toml";
}

struct RunResult {
    int code;
    std::string out;
    std::string err;
    nlohmann::json json() const { return nlohmann::json::parse(out); }
};

RunResult run(const std::string& subcommand, const std::string& file,
              std::optional<double> tol = std::nullopt,
              std::optional<unsigned long long> cap = std::nullopt) {
    CliOptions options;
    options.subcommand = subcommand;
    options.file = file;
    options.tol = tol;
    options.cap = cap;
    options.timestamp = false;
    std::ostringstream out, err;
    const int code = run_cli(options, out, err);
    return RunResult{code, out.str(), err.str()};
}

/// Write a scratch problem file and return its path.
class ScratchFile {
public:
    explicit ScratchFile(const std::string& contents) {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("tsvar_cli_test_" + std::to_string(++counter) + ".toml");
        std::ofstream(path_) << contents;
    }
    ~ScratchFile() { std::filesystem::remove(path_); }
    std::string path() const { return path_.string(); }

private:
    std::filesystem::path path_;
};

}  // namespace

TEST_CASE("validate echoes the parsed problem") {
    const RunResult r = run("validate", fixture_path());
    CHECK(r.code == 0);
    const auto j = r.json();
    CHECK(j["valid"] == true);
    CHECK(j["input"]["flavor"] == "nabla");
    CHECK(j["input"]["n"] == 1);
    CHECK(j["input"]["lagrangian"] == "(v^2 - 1)^2");
    CHECK(j["input"]["points"].size() == 9);
    CHECK(j["input"]["trajectories"] ==
          nlohmann::json::array({"zigzag", "zero"}));
}

TEST_CASE("check-el passes both stored trajectories") {
    const RunResult r = run("check-el", fixture_path());
    CHECK(r.code == 0);
    const auto j = r.json();
    CHECK(j["all_pass"] == true);
    REQUIRE(j["checks"].size() == 2);
    for (const auto& c : j["checks"]) {
        CHECK(c["verdict"] == "pass");
        CHECK(c["values"].size() == 8);
    }
}

TEST_CASE("check-dbr fails the zigzag and exits 1") {
    const RunResult r = run("check-dbr", fixture_path());
    CHECK(r.code == 1);
    const auto j = r.json();
    CHECK(j["all_pass"] == false);
    REQUIRE(j["checks"].size() == 2);
    CHECK(j["checks"][0]["trajectory"] == "zigzag");
    CHECK(j["checks"][0]["verdict"] == "fail");
    CHECK(j["checks"][0]["hamiltonian_spread"] == 1.0);
    CHECK(j["checks"][1]["trajectory"] == "zero");
    CHECK(j["checks"][1]["verdict"] == "pass");
}

TEST_CASE("noether verdicts and the tolerance override") {
    const RunResult strict = run("noether", fixture_path());
    CHECK(strict.code == 1);
    const auto j = strict.json();
    CHECK(j["checks"][0]["verdict"] == "fail");
    CHECK(j["checks"][1]["verdict"] == "pass");

    // A sloppy tolerance lets the zigzag through: exit code drops to 0.
    const RunResult loose = run("noether", fixture_path(), 10.0);
    CHECK(loose.code == 0);
}

TEST_CASE("eval reports action values without verdicts") {
    const RunResult r = run("eval", fixture_path());
    CHECK(r.code == 0);
    const auto j = r.json();
    CHECK(j["checks"][0]["value"] == 0.5);
    CHECK(j["checks"][1]["value"] == 1.0);
    CHECK(j["checks"][0]["boundary_feasible"] == true);
    CHECK_FALSE(j.contains("all_pass"));
}

TEST_CASE("invariance agreement on the shipped problem") {
    const RunResult r = run("invariance", fixture_path());
    CHECK(r.code == 0);
    const auto j = r.json();
    for (const auto& c : j["checks"]) {
        CHECK(c["verdict"] == "pass");
        CHECK(c["max_abs_analytic"] == 0.0);
        CHECK(c["max_abs_numeric"].get<double>() <= 1e-8);
    }
}

TEST_CASE("reports are byte-deterministic without the timestamp") {
    const RunResult a = run("enumerate", fixture_path());
    const RunResult b = run("enumerate", fixture_path());
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("enumerate summary matches the known counts") {
    const RunResult r = run("enumerate", fixture_path());
    CHECK(r.code == 0);
    const auto s = r.json()["enumeration"]["summary"];
    CHECK(s["raw_candidates"] == 6561.0);
    CHECK(s["boundary_feasible"] == 1107);
    CHECK(s["el_pass"] == 1107);
    CHECK(s["dbr_pass"] == 71);
    CHECK(s["noether_pass"] == 71);

    const RunResult capped = run("enumerate", fixture_path(), std::nullopt, 100);
    CHECK(capped.code == 2);
    CHECK(capped.err.find("cap") != std::string::npos);
}

TEST_CASE("dual emits a problem file that round-trips") {
    const RunResult once = run("dual", fixture_path());
    CHECK(once.code == 0);
    const ScratchFile dual_file(once.out);
    const ProblemFileData dual = tsvar::load_problem_file(dual_file.path());
    CHECK(dual.problem.flavor() == tsvar::Flavor::Delta);
    CHECK(dual.problem.a() == -1.0);
    CHECK(dual.problem.b() == 0.0);

    const RunResult twice = run("dual", dual_file.path());
    CHECK(twice.code == 0);
    const ScratchFile original_again(twice.out);
    const ProblemFileData back = tsvar::load_problem_file(original_again.path());
    const ProblemFileData original = tsvar::load_problem_file(fixture_path());

    CHECK(back.problem.scale() == original.problem.scale());
    CHECK(back.problem.a() == original.problem.a());
    CHECK(back.problem.b() == original.problem.b());
    CHECK(back.problem.flavor() == original.problem.flavor());
    CHECK(back.problem.boundary_a() == original.problem.boundary_a());
    CHECK(back.problem.boundary_b() == original.problem.boundary_b());
    CHECK(back.problem.lagrangian().expression().identical(
        original.problem.lagrangian().expression()));
    CHECK(back.symmetry_texts == original.symmetry_texts);
    REQUIRE(back.trajectories.size() == original.trajectories.size());
    for (std::size_t i = 0; i < back.trajectories.size(); ++i) {
        CHECK(back.trajectories[i].name == original.trajectories[i].name);
        for (std::size_t k = 0; k < back.trajectories[i].values.size(); ++k) {
            CHECK(back.trajectories[i].values.value(k) ==
                  original.trajectories[i].values.value(k));
        }
    }
    REQUIRE(back.search.has_value());
    CHECK(back.search->alphabet.per_component ==
          original.search->alphabet.per_component);
}

TEST_CASE("invariance on a delta problem is an input error") {
    const RunResult once = run("dual", fixture_path());
    const ScratchFile dual_file(once.out);
    const RunResult r = run("invariance", dual_file.path());
    CHECK(r.code == 2);
    CHECK(r.err.find("nabla") != std::string::npos);
}

TEST_CASE("input errors name the file, section and position") {
    const RunResult missing = run("check-el", "/nonexistent/nope.toml");
    CHECK(missing.code == 2);
    CHECK(missing.err.find("nope.toml") != std::string::npos);

    const ScratchFile bad_lagrangian(R"(schema = 1
[timescale]
kind = "uniform"
a = 0.0
b = 1.0
h = 0.25
[problem]
flavor = "nabla"
n = 1
lagrangian = "(v^2-1)^"
a = 0.0
b = 1.0
A = 0.0
B = 0.0
)");
    const RunResult bad = run("validate", bad_lagrangian.path());
    CHECK(bad.code == 2);
    CHECK(bad.err.find("[problem]") != std::string::npos);
    CHECK(bad.err.find("offset 8") != std::string::npos);
    CHECK(bad.json()["diagnostics"].size() == 1);

    const ScratchFile unknown_key(R"(schema = 1
[timescale]
kind = "uniform"
a = 0.0
b = 1.0
h = 0.25
step = 3
[problem]
flavor = "nabla"
n = 1
lagrangian = "v^2"
a = 0.0
b = 1.0
A = 0.0
B = 1.0
)");
    const RunResult unknown = run("validate", unknown_key.path());
    CHECK(unknown.code == 2);
    CHECK(unknown.err.find("unknown key 'step'") != std::string::npos);
    CHECK(unknown.err.find(":7:") != std::string::npos);

    const ScratchFile no_problem("schema = 1\n[timescale]\nkind = \"uniform\"\na = 0.0\nb = 1.0\nh = 0.25\n");
    const RunResult missing_section = run("validate", no_problem.path());
    CHECK(missing_section.code == 2);
    CHECK(missing_section.err.find("[problem]") != std::string::npos);

    const ScratchFile wrong_count(R"(schema = 1
[timescale]
kind = "uniform"
a = 0.0
b = 1.0
h = 0.25
[problem]
flavor = "nabla"
n = 1
lagrangian = "v^2"
a = 0.0
b = 1.0
A = 0.0
B = 0.0
[trajectory.short]
values = [0, 1]
)");
    const RunResult short_traj = run("validate", wrong_count.path());
    CHECK(short_traj.code == 2);
    CHECK(short_traj.err.find("trajectory.short") != std::string::npos);
    CHECK(short_traj.err.find("expected 5 samples") != std::string::npos);
}

TEST_CASE("checks that need missing sections report input errors") {
    const ScratchFile no_traj(R"(schema = 1
[timescale]
kind = "uniform"
a = 0.0
b = 1.0
h = 0.25
[problem]
flavor = "nabla"
n = 1
lagrangian = "v^2"
a = 0.0
b = 1.0
A = 0.0
B = 1.0
)");
    CHECK(run("check-el", no_traj.path()).code == 2);
    CHECK(run("noether", fixture_path()).code == 1);  // symmetry present
    CHECK(run("enumerate", no_traj.path()).code == 2);  // no search section
}

TEST_CASE("qscale and multi-component problem files") {
    const ScratchFile qfile(R"(schema = 1
[timescale]
kind = "qscale"
q = 2.0
kmin = 0
kmax = 3
[problem]
flavor = "nabla"
n = 1
lagrangian = "v^2"
a = 1.0
b = 8.0
A = 0.0
B = 7.0
[trajectory.line]
values = [0, 1, 3, 7]
)");
    const RunResult r = run("check-el", qfile.path());
    CHECK(r.code == 0);
    const auto j = r.json();
    CHECK(j["input"]["points"] == nlohmann::json::array({1.0, 2.0, 4.0, 8.0}));
    CHECK(j["checks"][0]["verdict"] == "pass");  // unit slope everywhere

    const ScratchFile planar(R"(schema = 1
[timescale]
kind = "uniform"
a = 0.0
b = 1.0
h = 0.25
[problem]
flavor = "nabla"
n = 2
lagrangian = "v1^2 + v2^2"
a = 0.0
b = 1.0
A = [0.0, 0.0]
B = [1.0, -1.0]
[symmetry]
tau = "1"
xi = ["0", "0"]
[trajectory.line]
derivs = [[1, -1], [1, -1], [1, -1], [1, -1]]
)");
    const RunResult r2 = run("noether", planar.path());
    CHECK(r2.code == 0);
    const auto j2 = r2.json();
    CHECK(j2["checks"][0]["verdict"] == "pass");
    // Constant quantity L - d3.v = 2 - 2*2 = -2 at every sample.
    for (const auto& value : j2["checks"][0]["quantity"]["values"]) {
        CHECK(value.get<double>() == -2.0);
    }
}
