// SPDX-License-Identifier: MIT
#pragma once

#include <optional>
#include <span>
#include <vector>

#include "tsvar/variational.hpp"

namespace tsvar {

/// Default ceiling on the number of enumerated candidates.
inline constexpr unsigned long long kDefaultEnumerationCap = 10'000'000ULL;

/// Per-component sets of allowed backward difference-quotient values.
struct DerivativeAlphabet {
    std::vector<std::vector<double>> per_component;
};

/// Invert the backward difference quotient: q(t0) = anchor and
/// q(t_i) = q(t_{i-1}) + nu(t_i) * derivs[i-1]. Needs one derivative
/// vector per point after the first.
GridFunction reconstruct(const TimeScale& scale, const Vec& anchor,
                         const std::vector<Vec>& derivs);

/// All trajectories over the alphabet starting at q(a) = A whose endpoint
/// lands within boundary_tol of B. Candidates are generated in mixed-radix
/// order (last step varies fastest), so ids and output order are
/// deterministic. Throws CapExceeded when the raw candidate count
/// (product of per-step choices) exceeds the cap.
std::vector<GridFunction> enumerate_trajectories(
    const VariationalProblem& P, const DerivativeAlphabet& alphabet,
    double boundary_tol = kDefaultBoundaryTol,
    unsigned long long cap = kDefaultEnumerationCap);

struct ClassificationRow {
    std::size_t id;  // position in the candidate sequence
    bool boundary_feasible;
    bool el_pass;
    bool dbr_pass;
    std::optional<double> noether_spread;
    double value;
};

/// Run the extremality filters over a candidate list and sort the rows by
/// action value (ties by id). Re-running on the same candidates reproduces
/// identical rows.
std::vector<ClassificationRow> classify(
    const VariationalProblem& P, std::span<const GridFunction> candidates,
    const SymmetryGenerators* generators = nullptr,
    double tol = kDefaultConstancyTol,
    double boundary_tol = kDefaultBoundaryTol);

/// Damped Newton iteration on the integral-form Euler-Lagrange system
/// E(t_i) - E(t_1) = 0 over the interior values of q, with q(a), q(b)
/// pinned to the problem's boundary data. Finite-difference Jacobian with
/// step 1e-7 and a halving line search. Returns once the max-norm residual
/// drops to 1e-10; throws NoConvergence (with the residual history) when
/// max_iter runs out or the line search stalls with steps below step_tol,
/// and SingularJacobian when elimination breaks down.
GridFunction solve_el_newton(const VariationalProblem& P,
                             const GridFunction& q_init, int max_iter = 50,
                             double step_tol = 1e-14);

}  // namespace tsvar
