// SPDX-License-Identifier: MIT
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "tsvar/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"tsvar - verification and exploration of backward "
                 "calculus-of-variations problems on finite time scales"};
    app.require_subcommand(1);

    tsvar::CliOptions options;

    struct SubSpec {
        const char* name;
        const char* description;
    };
    static const SubSpec subs[] = {
        {"validate", "parse a problem file and report diagnostics"},
        {"eval", "evaluate the action of every trajectory"},
        {"check-el", "integral-form Euler-Lagrange residual per trajectory"},
        {"check-dbr", "second-equation (DuBois-Reymond) residual per trajectory"},
        {"noether", "conserved-quantity constancy per trajectory"},
        {"invariance", "analytic and numeric invariance residuals"},
        {"dual", "emit the dual problem file"},
        {"enumerate", "brute-force search over a derivative alphabet"},
    };

    for (const SubSpec& spec : subs) {
        CLI::App* sub = app.add_subcommand(spec.name, spec.description);
        sub->add_option("file", options.file, "problem file (TOML)")
            ->required();
        sub->add_option("--tol", [&options](const CLI::results_t& res) {
               options.tol = std::stod(res.front());
               return true;
           },
           "constancy tolerance override");
        sub->add_option("--eps", options.eps,
                        "step for the numeric invariance derivative");
        sub->add_option("--cap", [&options](const CLI::results_t& res) {
               options.cap = std::stoull(res.front());
               return true;
           },
           "enumeration candidate cap override");
        sub->add_option("--json", options.output_path,
                        "write the report here instead of stdout");
        sub->add_flag("--no-timestamp", [&options](std::int64_t) {
                options.timestamp = false;
            },
            "omit the timestamp field (byte-reproducible output)");
        sub->callback([&options, spec] { options.subcommand = spec.name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;  // --help exits 0, any parse error is an input error
    }
    return tsvar::run_cli(options, std::cout, std::cerr);
}
