// SPDX-License-Identifier: MIT
#pragma once

#include <span>
#include <string>
#include <vector>

#include "tsvar/calculus.hpp"
#include "tsvar/lagrangian.hpp"

namespace tsvar {

/// Default relative yardstick for "is this sequence constant".
inline constexpr double kDefaultConstancyTol = 1e-9;

/// Default tolerance for matching boundary values.
inline constexpr double kDefaultBoundaryTol = 1e-9;

enum class Flavor { Nabla, Delta };

const char* flavor_name(Flavor f);

/// First-order generators (tau, xi) of a one-parameter transformation
/// family t -> t + eps*tau(t, q), q -> q + eps*xi(t, q).
struct SymmetryGenerators {
    Expression tau;
    std::vector<Expression> xi;

    static SymmetryGenerators parse(std::string_view tau_src,
                                    std::span<const std::string> xi_srcs,
                                    std::size_t dim);
    std::size_t dim() const { return xi.size(); }
};

/// Generators of the transported family on the dual problem:
/// tau*(s, x) = -tau(-s, x), xi*(s, x) = -xi(-s, x). This is the
/// eps -> -eps parameterization of the reflected family, the one under
/// which the conserved quantity transports with equal values (rather than
/// merely equal up to sign) between a problem and its dual.
SymmetryGenerators dual_generators(const SymmetryGenerators& g);

/// Verdict on whether a sampled quantity is constant. For vector-valued
/// samples the rule is applied per component; `spread` is the largest
/// componentwise max-min gap and the verdict requires every component to
/// satisfy spread_c <= tolerance * (1 + |mean_c|).
struct ConstancyReport {
    TimeScale domain;
    std::vector<Vec> values;
    double spread = 0.0;
    double tolerance = kDefaultConstancyTol;
    bool pass = false;
};

ConstancyReport make_constancy_report(TimeScale domain, std::vector<Vec> values,
                                      double tolerance);

/// A fixed-endpoint variational problem on a finite time scale:
/// minimize the nabla (or delta) action integral of L over [a, b] subject
/// to q(a) = A, q(b) = B.
class VariationalProblem {
public:
    VariationalProblem(TimeScale scale, double a, double b, Lagrangian L,
                       Vec A, Vec B, Flavor flavor);

    const TimeScale& scale() const noexcept { return scale_; }
    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    const Lagrangian& lagrangian() const noexcept { return lagrangian_; }
    const Vec& boundary_a() const noexcept { return boundary_a_; }
    const Vec& boundary_b() const noexcept { return boundary_b_; }
    Flavor flavor() const noexcept { return flavor_; }
    std::size_t dim() const noexcept { return boundary_a_.size(); }

    /// The points of the scale inside [a, b].
    const TimeScale& window() const noexcept { return window_; }

private:
    TimeScale scale_;
    double a_;
    double b_;
    Lagrangian lagrangian_;
    Vec boundary_a_;
    Vec boundary_b_;
    Flavor flavor_;
    TimeScale window_;
};

/// The dual problem: negated scale, interval [-b, -a], dual Lagrangian,
/// swapped boundary values and toggled flavor. An involution.
VariationalProblem dual_problem(const VariationalProblem& P);

/// Action value. Nabla flavor: sum over t in (a, b] of
/// nu(t) * L(t, q(rho(t)), q_nabla(t)); delta flavor mirrors with sigma/mu
/// over [a, b). Boundary values are not enforced here.
double evaluate_functional(const VariationalProblem& P, const GridFunction& q);

/// Whether q matches the problem's boundary values at a and b.
bool boundary_feasible(const VariationalProblem& P, const GridFunction& q,
                       double tol = kDefaultBoundaryTol);

/// Integral-form Euler-Lagrange residual for nabla problems:
/// E(t) = d3L(t, q^rho, q^nabla) - integral over (a, t] of d2L, sampled on
/// (a, b]. The trajectory is extremal when E is constant.
ConstancyReport el_residual_nabla(const VariationalProblem& P,
                                  const GridFunction& q,
                                  double tol = kDefaultConstancyTol);

/// Delta mirror of el_residual_nabla: E(t) = d3L(t, q^sigma, q^delta) minus
/// the left-closed running integral of d2L, sampled on [a, b).
ConstancyReport el_residual_delta(const VariationalProblem& P,
                                  const GridFunction& q,
                                  double tol = kDefaultConstancyTol);

struct NoetherResult {
    GridFunction quantity;
    ConstancyReport report;
};

/// Conserved quantity for invariant nabla problems:
/// C(t) = d3L . xi(t, q) + [L - d3L . q^nabla + d1L * nu(t)] * tau(t, q),
/// with all L-partials at (t, q^rho(t), q^nabla(t)), sampled on (a, b].
NoetherResult noether_quantity_nabla(const VariationalProblem& P,
                                     const SymmetryGenerators& g,
                                     const GridFunction& q,
                                     double tol = kDefaultConstancyTol);

/// Delta-side quantity:
/// C(t) = d3L . xi(t, q) - [L - d3L . q^delta - d1L * mu(t)] * tau(t, q),
/// with partials at (t, q^sigma(t), q^delta(t)), sampled on [a, b).
/// Under dual transport, the value of noether_quantity_nabla(P, g, q) at s
/// equals this quantity for (dual_problem(P), dual_generators(g),
/// dual_function(q)) at -s.
NoetherResult noether_quantity_delta(const VariationalProblem& P,
                                     const SymmetryGenerators& g,
                                     const GridFunction& q,
                                     double tol = kDefaultConstancyTol);

/// Second-equation residual report. `hamiltonian` samples
/// H(t, q^rho, q^nabla) on (a, b]; `residual` is its nabla derivative plus
/// d1L, which must vanish, and lives on the twice-restricted domain since
/// forming H already consumes one restriction. When d1L vanishes along the
/// trajectory (`autonomous`), constancy of H itself is the equivalent view
/// exposed by `h_constancy`.
struct DbrReport {
    GridFunction hamiltonian;
    GridFunction residual;
    double max_abs_residual = 0.0;
    double tolerance = kDefaultConstancyTol;
    bool pass = false;
    bool autonomous = false;
    ConstancyReport h_constancy;
};

/// Nabla second equation with H(t,u,v) = -L + d3L . v - d1L * nu(t):
/// nabla-derivative of H along the trajectory must equal -d1L.
DbrReport dbr_residual_nabla(const VariationalProblem& P, const GridFunction& q,
                             double tol = kDefaultConstancyTol);

/// Delta second equation with H(t,u,v) = -L + d3L . v + d1L * mu(t).
DbrReport dbr_residual_delta(const VariationalProblem& P, const GridFunction& q,
                             double tol = kDefaultConstancyTol);

/// First-order invariance defect along q, sampled on (a, b]:
/// d1L * tau + d2L . xi^rho + d3L . xi^nabla + L * tau^nabla
/// - (q^nabla . d3L) * tau^nabla, where xi^rho(t) = xi(rho(t), q(rho(t)))
/// and xi^nabla, tau^nabla are nabla derivatives of t -> xi(t, q(t)),
/// t -> tau(t, q(t)). Identically zero means the action is invariant
/// along q under the family generated by (tau, xi).
GridFunction invariance_residual(const VariationalProblem& P,
                                 const SymmetryGenerators& g,
                                 const GridFunction& q);

/// Finite-difference counterpart of invariance_residual: the central
/// eps-derivative at 0 of L(A_eps, B_eps^rho, B_eps^nabla / A_eps^nabla)
/// * A_eps^nabla with A_eps(t) = t + eps*tau(t, q(t)) and
/// B_eps(t) = q(t) + eps*xi(t, q(t)); rho and nabla are taken on the
/// original scale. Throws NotMonotone when the transformed time map is not
/// strictly increasing for either sign of eps.
GridFunction invariance_check_numeric(const VariationalProblem& P,
                                      const SymmetryGenerators& g,
                                      const GridFunction& q, double eps);

}  // namespace tsvar
