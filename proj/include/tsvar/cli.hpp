// SPDX-License-Identifier: MIT
#pragma once

#include <optional>
#include <ostream>
#include <string>

namespace tsvar {

inline constexpr const char* kToolName = "tsvar";
inline constexpr const char* kToolVersion = "0.1.0";

/// One batch invocation. Subcommands: validate, eval, check-el, check-dbr,
/// noether, invariance, dual, enumerate.
struct CliOptions {
    std::string subcommand;
    std::string file;
    std::optional<double> tol;               // overrides [tolerances] constancy
    double eps = 1e-4;                        // numeric invariance step
    std::optional<unsigned long long> cap;    // overrides [search] cap
    std::string output_path;                  // empty = stdout
    bool timestamp = true;                    // off for byte-reproducible output
};

/// Run one subcommand. The machine-readable report (JSON; a TOML problem
/// file for `dual`) goes to `out` or to options.output_path; the human
/// summary goes to `err`. Returns the process exit code: 0 when every
/// requested verdict passes, 1 when at least one fails, 2 on input errors.
int run_cli(const CliOptions& options, std::ostream& out, std::ostream& err);

}  // namespace tsvar
