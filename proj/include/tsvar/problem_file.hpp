// SPDX-License-Identifier: MIT
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tsvar/search.hpp"
#include "tsvar/variational.hpp"

namespace tsvar {

/// Problem-file diagnostics carry file, section and line context in the
/// message; any such failure maps to CLI exit code 2.
class ProblemFileError : public Error {
public:
    using Error::Error;
};

struct TrajectorySpec {
    std::string name;
    GridFunction values;  // resolved on the problem window
};

struct SearchSpec {
    DerivativeAlphabet alphabet;
    unsigned long long cap = kDefaultEnumerationCap;
    double boundary_tol = kDefaultBoundaryTol;
};

struct ToleranceSpec {
    double constancy = kDefaultConstancyTol;
    double boundary = kDefaultBoundaryTol;
};

/// A fully resolved problem file (TOML, `schema = 1`).
///
/// Sections: [timescale] (kind = finite | uniform | qscale), [problem]
/// (flavor, n, lagrangian, a, b, A, B), optional [symmetry] (tau, xi),
/// optional [trajectory.<name>] (values, or derivs + anchor), optional
/// [search] (alphabet, cap, boundary_tol), optional [tolerances].
struct ProblemFileData {
    long schema = 1;
    VariationalProblem problem;
    std::string lagrangian_text;  // canonical form of the parsed expression
    std::optional<SymmetryGenerators> symmetry;
    std::vector<std::string> symmetry_texts;  // tau, then xi components
    std::vector<TrajectorySpec> trajectories;
    std::optional<SearchSpec> search;
    ToleranceSpec tolerances;
};

/// Parse problem-file text. `origin` names the file in diagnostics.
ProblemFileData parse_problem_file(const std::string& text,
                                   const std::string& origin);

/// Read and parse a problem file from disk.
ProblemFileData load_problem_file(const std::string& path);

/// Render the dual problem file: negated finite scale, reflected interval,
/// dual Lagrangian, swapped boundary values, toggled flavor, transported
/// generators and dualized trajectories. Applying this twice yields a file
/// whose parsed form matches the original.
std::string write_dual_problem_file(const ProblemFileData& data);

}  // namespace tsvar
