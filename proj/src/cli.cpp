// SPDX-License-Identifier: MIT
#include "tsvar/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include "tsvar/problem_file.hpp"
#include "tsvar/report.hpp"
#include "tsvar/search.hpp"

namespace tsvar {
namespace {

Json points_json(const TimeScale& T) {
    Json arr = Json::array();
    for (double t : T.points()) arr.push_back(t);
    return arr;
}

Json samples_json(const std::vector<Vec>& values) {
    Json arr = Json::array();
    for (const Vec& v : values) {
        if (v.size() == 1) {
            arr.push_back(v[0]);
        } else {
            Json row = Json::array();
            for (double x : v) row.push_back(x);
            arr.push_back(std::move(row));
        }
    }
    return arr;
}

Json grid_json(const GridFunction& f) {
    Json g;
    g["points"] = points_json(f.scale());
    g["values"] = samples_json(f.values());
    return g;
}

Json vec_json(const Vec& v) {
    Json arr = Json::array();
    for (double x : v) arr.push_back(x);
    return arr;
}

const char* verdict_name(bool pass) { return pass ? "pass" : "fail"; }

/// Short rendering for the stderr summary; reports keep full precision.
std::string brief(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

double max_abs_scalar(const GridFunction& f) {
    double m = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        m = std::max(m, std::abs(f.scalar_value(i)));
    }
    return m;
}

struct Session {
    const CliOptions& options;
    std::ostream& err;
    ProblemFileData data;
    double tol;
    Json checks = Json::array();
    bool has_verdicts = false;
    bool all_pass = true;

    void note_verdict(const std::string& label, bool pass,
                      const std::string& detail) {
        has_verdicts = true;
        all_pass = all_pass && pass;
        err << "  " << label << ": " << (pass ? "PASS" : "FAIL");
        if (!detail.empty()) err << "  (" << detail << ")";
        err << "\n";
    }

    void require_trajectories() const {
        if (data.trajectories.empty()) {
            throw ProblemFileError(options.file +
                                   ": no [trajectory.<name>] sections; '" +
                                   options.subcommand +
                                   "' needs at least one trajectory");
        }
    }

    const SymmetryGenerators& require_symmetry() const {
        if (!data.symmetry.has_value()) {
            throw ProblemFileError(options.file + ": missing [symmetry] section "
                                                  "required by '" +
                                   options.subcommand + "'");
        }
        return *data.symmetry;
    }

    void run_eval() {
        require_trajectories();
        for (const TrajectorySpec& spec : data.trajectories) {
            const double value = evaluate_functional(data.problem, spec.values);
            const bool feasible = boundary_feasible(data.problem, spec.values,
                                                    data.tolerances.boundary);
            Json c;
            c["trajectory"] = spec.name;
            c["check"] = "action_value";
            c["value"] = value;
            c["boundary_feasible"] = feasible;
            checks.push_back(std::move(c));
            err << "  " << spec.name << ": action = " << brief(value)
                << (feasible ? "" : "  [boundary mismatch]") << "\n";
        }
    }

    void run_check_el() {
        require_trajectories();
        for (const TrajectorySpec& spec : data.trajectories) {
            const ConstancyReport r =
                data.problem.flavor() == Flavor::Nabla
                    ? el_residual_nabla(data.problem, spec.values, tol)
                    : el_residual_delta(data.problem, spec.values, tol);
            Json c;
            c["trajectory"] = spec.name;
            c["check"] = "euler_lagrange";
            c["domain"] = points_json(r.domain);
            c["values"] = samples_json(r.values);
            c["spread"] = r.spread;
            c["tolerance"] = r.tolerance;
            c["verdict"] = verdict_name(r.pass);
            checks.push_back(std::move(c));
            note_verdict(spec.name, r.pass,
                         "spread " + brief(r.spread) + " vs tol " +
                             brief(r.tolerance));
        }
    }

    void run_check_dbr() {
        require_trajectories();
        for (const TrajectorySpec& spec : data.trajectories) {
            const DbrReport r =
                data.problem.flavor() == Flavor::Nabla
                    ? dbr_residual_nabla(data.problem, spec.values, tol)
                    : dbr_residual_delta(data.problem, spec.values, tol);
            Json c;
            c["trajectory"] = spec.name;
            c["check"] = "dubois_reymond";
            c["hamiltonian"] = grid_json(r.hamiltonian);
            c["residual"] = grid_json(r.residual);
            c["max_abs_residual"] = r.max_abs_residual;
            c["tolerance"] = r.tolerance;
            c["autonomous"] = r.autonomous;
            c["hamiltonian_spread"] = r.h_constancy.spread;
            c["hamiltonian_constant"] = r.h_constancy.pass;
            c["verdict"] = verdict_name(r.pass);
            checks.push_back(std::move(c));
            note_verdict(spec.name, r.pass,
                         "max residual " + brief(r.max_abs_residual));
        }
    }

    void run_noether() {
        require_trajectories();
        const SymmetryGenerators& g = require_symmetry();
        for (const TrajectorySpec& spec : data.trajectories) {
            const NoetherResult r =
                data.problem.flavor() == Flavor::Nabla
                    ? noether_quantity_nabla(data.problem, g, spec.values, tol)
                    : noether_quantity_delta(data.problem, g, spec.values, tol);
            Json c;
            c["trajectory"] = spec.name;
            c["check"] = "noether_constancy";
            c["quantity"] = grid_json(r.quantity);
            c["spread"] = r.report.spread;
            c["tolerance"] = r.report.tolerance;
            c["verdict"] = verdict_name(r.report.pass);
            checks.push_back(std::move(c));
            note_verdict(spec.name, r.report.pass,
                         "spread " + brief(r.report.spread));
        }
    }

    void run_invariance() {
        require_trajectories();
        const SymmetryGenerators& g = require_symmetry();
        for (const TrajectorySpec& spec : data.trajectories) {
            const GridFunction analytic =
                invariance_residual(data.problem, g, spec.values);
            const GridFunction numeric = invariance_check_numeric(
                data.problem, g, spec.values, options.eps);
            double agreement = 0.0;
            for (std::size_t i = 0; i < analytic.size(); ++i) {
                const double a = analytic.scalar_value(i);
                const double n = numeric.scalar_value(i);
                agreement = std::max(agreement,
                                     std::abs(a - n) / (1.0 + std::abs(a)));
            }
            const double max_analytic = max_abs_scalar(analytic);
            const bool pass = max_analytic <= tol && agreement <= 1e-6;
            Json c;
            c["trajectory"] = spec.name;
            c["check"] = "invariance";
            c["analytic"] = grid_json(analytic);
            c["numeric_values"] = samples_json(numeric.values());
            c["eps"] = options.eps;
            c["max_abs_analytic"] = max_analytic;
            c["max_abs_numeric"] = max_abs_scalar(numeric);
            c["agreement_defect"] = agreement;
            c["tolerance"] = tol;
            c["verdict"] = verdict_name(pass);
            checks.push_back(std::move(c));
            note_verdict(spec.name, pass,
                         "max analytic defect " + brief(max_analytic));
        }
    }

    Json run_enumerate() {
        if (!data.search.has_value()) {
            throw ProblemFileError(options.file +
                                   ": missing [search] section required by "
                                   "'enumerate'");
        }
        const SearchSpec& spec = *data.search;
        const unsigned long long cap = options.cap.value_or(spec.cap);
        const std::vector<GridFunction> candidates = enumerate_trajectories(
            data.problem, spec.alphabet, spec.boundary_tol, cap);
        const SymmetryGenerators* g =
            data.symmetry.has_value() ? &*data.symmetry : nullptr;
        const std::vector<ClassificationRow> rows =
            classify(data.problem, candidates, g, tol, spec.boundary_tol);

        std::size_t el_pass = 0, dbr_pass = 0, noether_pass = 0;
        double min_value = rows.empty() ? 0.0 : rows.front().value;
        for (const ClassificationRow& row : rows) {
            if (row.el_pass) ++el_pass;
            if (row.dbr_pass) ++dbr_pass;
            if (row.noether_spread.has_value() && *row.noether_spread <= tol) {
                ++noether_pass;
            }
        }

        Json result;
        Json summary;
        std::size_t choices = 1;
        for (const auto& set : spec.alphabet.per_component) {
            choices *= set.size();
        }
        const std::size_t steps = data.problem.window().size() - 1;
        summary["steps"] = steps;
        summary["choices_per_step"] = choices;
        summary["raw_candidates"] =
            std::pow(static_cast<double>(choices), static_cast<double>(steps));
        summary["boundary_feasible"] = rows.size();
        summary["el_pass"] = el_pass;
        summary["dbr_pass"] = dbr_pass;
        if (g != nullptr) summary["noether_pass"] = noether_pass;
        summary["min_action"] = min_value;
        result["summary"] = std::move(summary);

        Json table = Json::array();
        for (const ClassificationRow& row : rows) {
            Json r;
            r["id"] = row.id;
            r["action"] = row.value;
            r["boundary_feasible"] = row.boundary_feasible;
            r["el"] = verdict_name(row.el_pass);
            r["dbr"] = verdict_name(row.dbr_pass);
            if (row.noether_spread.has_value()) {
                r["noether_spread"] = *row.noether_spread;
            }
            const GridFunction d = nabla_derivative(candidates[row.id]);
            r["derivs"] = samples_json(d.values());
            table.push_back(std::move(r));
        }
        result["candidates"] = std::move(table);

        err << "  candidates: " << brief(std::pow(static_cast<double>(choices),
                                               static_cast<double>(steps)))
            << ", boundary-feasible: " << rows.size() << ", el: " << el_pass
            << ", dbr: " << dbr_pass << "\n";
        return result;
    }
};

int write_output(const CliOptions& options, const std::string& text,
                 std::ostream& out, std::ostream& err) {
    if (options.output_path.empty()) {
        out << text;
        return 0;
    }
    std::ofstream file(options.output_path);
    if (!file) {
        err << "error: cannot write " << options.output_path << "\n";
        return 2;
    }
    file << text;
    err << "  report written to " << options.output_path << "\n";
    return 0;
}

}  // namespace

int run_cli(const CliOptions& options, std::ostream& out, std::ostream& err) {
    static const std::vector<std::string> known = {
        "validate", "eval",       "check-el", "check-dbr",
        "noether",  "invariance", "dual",     "enumerate"};
    if (std::find(known.begin(), known.end(), options.subcommand) ==
        known.end()) {
        err << "error: unknown subcommand '" << options.subcommand << "'\n";
        return 2;
    }

    Json report;
    report["tool"] = kToolName;
    report["version"] = kToolVersion;
    report["report_schema"] = 1;
    if (options.timestamp) report["timestamp"] = utc_timestamp();
    report["subcommand"] = options.subcommand;
    report["file"] = options.file;

    err << kToolName << " " << options.subcommand << " " << options.file << "\n";

    try {
        ProblemFileData data = load_problem_file(options.file);
        const double tol =
            options.tol.value_or(data.tolerances.constancy);
        if (tol <= 0.0) {
            throw ProblemFileError("--tol must be positive");
        }

        Json input;
        input["schema"] = data.schema;
        input["flavor"] = flavor_name(data.problem.flavor());
        input["n"] = data.problem.dim();
        input["lagrangian"] = data.lagrangian_text;
        input["points"] = points_json(data.problem.scale());
        input["a"] = data.problem.a();
        input["b"] = data.problem.b();
        input["A"] = vec_json(data.problem.boundary_a());
        input["B"] = vec_json(data.problem.boundary_b());
        if (!data.symmetry_texts.empty()) {
            input["tau"] = data.symmetry_texts.front();
            Json xi = Json::array();
            for (std::size_t i = 1; i < data.symmetry_texts.size(); ++i) {
                xi.push_back(data.symmetry_texts[i]);
            }
            input["xi"] = std::move(xi);
        }
        Json names = Json::array();
        for (const TrajectorySpec& t : data.trajectories) names.push_back(t.name);
        input["trajectories"] = std::move(names);
        report["input"] = std::move(input);

        Json tols;
        tols["constancy"] = tol;
        tols["boundary"] = data.tolerances.boundary;
        tols["eps"] = options.eps;
        report["tolerances"] = std::move(tols);

        if (options.subcommand == "dual") {
            const std::string toml = write_dual_problem_file(data);
            err << "  dual problem emitted (" << flavor_name(data.problem.flavor())
                << " -> "
                << flavor_name(dual_problem(data.problem).flavor()) << ")\n";
            return write_output(options, toml, out, err);
        }

        Session session{options, err, std::move(data), tol};

        if (options.subcommand == "validate") {
            report["valid"] = true;
            err << "  valid\n";
        } else if (options.subcommand == "eval") {
            session.run_eval();
        } else if (options.subcommand == "check-el") {
            session.run_check_el();
        } else if (options.subcommand == "check-dbr") {
            session.run_check_dbr();
        } else if (options.subcommand == "noether") {
            session.run_noether();
        } else if (options.subcommand == "invariance") {
            session.run_invariance();
        } else {  // enumerate
            report["enumeration"] = session.run_enumerate();
        }

        if (options.subcommand != "validate" &&
            options.subcommand != "enumerate") {
            report["checks"] = std::move(session.checks);
        }
        report["diagnostics"] = Json::array();
        if (session.has_verdicts) {
            report["all_pass"] = session.all_pass;
        }

        const int write_rc = write_output(options, dump_json(report), out, err);
        if (write_rc != 0) return write_rc;
        return session.has_verdicts && !session.all_pass ? 1 : 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        report["diagnostics"] = Json::array({e.what()});
        write_output(options, dump_json(report), out, err);
        return 2;
    }
}

}  // namespace tsvar
