// SPDX-License-Identifier: MIT
#include "tsvar/variational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace tsvar {

const char* flavor_name(Flavor f) {
    return f == Flavor::Nabla ? "nabla" : "delta";
}

SymmetryGenerators SymmetryGenerators::parse(std::string_view tau_src,
                                             std::span<const std::string> xi_srcs,
                                             std::size_t dim) {
    if (xi_srcs.size() != dim) {
        throw DimensionMismatch("expected " + std::to_string(dim) +
                                " xi expressions, got " +
                                std::to_string(xi_srcs.size()));
    }
    SymmetryGenerators g{Expression::parse(tau_src, dim, /*with_velocity=*/false),
                         {}};
    g.xi.reserve(dim);
    for (const std::string& src : xi_srcs) {
        g.xi.push_back(Expression::parse(src, dim, /*with_velocity=*/false));
    }
    return g;
}

SymmetryGenerators dual_generators(const SymmetryGenerators& g) {
    SymmetryGenerators out{g.tau.time_negated().negated(), {}};
    out.xi.reserve(g.xi.size());
    for (const Expression& x : g.xi) {
        out.xi.push_back(x.time_negated().negated());
    }
    return out;
}

ConstancyReport make_constancy_report(TimeScale domain, std::vector<Vec> values,
                                      double tolerance) {
    ConstancyReport report{std::move(domain), std::move(values), 0.0, tolerance,
                           true};
    if (report.values.empty()) return report;
    const std::size_t dim = report.values.front().size();
    for (std::size_t c = 0; c < dim; ++c) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        double sum = 0.0;
        for (const Vec& v : report.values) {
            lo = std::min(lo, v[c]);
            hi = std::max(hi, v[c]);
            sum += v[c];
        }
        const double mean = sum / static_cast<double>(report.values.size());
        const double spread = hi - lo;
        report.spread = std::max(report.spread, spread);
        if (spread > tolerance * (1.0 + std::abs(mean))) {
            report.pass = false;
        }
    }
    return report;
}

VariationalProblem::VariationalProblem(TimeScale scale, double a, double b,
                                       Lagrangian L, Vec A, Vec B, Flavor flavor)
    : scale_(std::move(scale)),
      a_(a),
      b_(b),
      lagrangian_(std::move(L)),
      boundary_a_(std::move(A)),
      boundary_b_(std::move(B)),
      flavor_(flavor),
      window_(scale_.restrict(scale_.min(), scale_.max())) {
    if (scale_.size() < 3) {
        throw TooSmall("variational problems need a scale with at least 3 points");
    }
    const std::size_t ia = scale_.index_of(a_);
    const std::size_t ib = scale_.index_of(b_);
    if (ia >= ib) {
        throw NotInScale("problem interval requires a < b");
    }
    if (boundary_a_.size() != lagrangian_.dim() ||
        boundary_b_.size() != lagrangian_.dim()) {
        throw DimensionMismatch("boundary values must have the Lagrangian dimension " +
                                std::to_string(lagrangian_.dim()));
    }
    window_ = scale_.restrict(a_, b_);
}

VariationalProblem dual_problem(const VariationalProblem& P) {
    return VariationalProblem(P.scale().dual(), -P.b(), -P.a(),
                              dual_lagrangian(P.lagrangian()), P.boundary_b(),
                              P.boundary_a(),
                              P.flavor() == Flavor::Nabla ? Flavor::Delta
                                                          : Flavor::Nabla);
}

namespace {

void require_flavor(const VariationalProblem& P, Flavor expected,
                    const char* op) {
    if (P.flavor() != expected) {
        throw WrongFlavor(std::string(op) + " applies to " +
                          flavor_name(expected) + " problems, got " +
                          flavor_name(P.flavor()));
    }
}

/// Trajectory values aligned with the problem window.
std::vector<Vec> window_values(const VariationalProblem& P,
                               const GridFunction& q) {
    if (q.dim() != P.dim()) {
        throw DimensionMismatch("trajectory dimension " + std::to_string(q.dim()) +
                                " does not match problem dimension " +
                                std::to_string(P.dim()));
    }
    std::vector<Vec> out;
    out.reserve(P.window().size());
    for (double t : P.window().points()) {
        out.push_back(q.value_at(t));
    }
    return out;
}

/// One flavor-specific evaluation point: at time t the Lagrangian sees the
/// shifted state u and the difference quotient v, with quadrature weight w
/// (nu for nabla samples, mu for delta ones).
struct Sample {
    std::size_t idx;  // window index of t
    double t;
    Vec u;
    Vec v;
    double weight;
};

std::vector<Sample> nabla_samples(const VariationalProblem& P,
                                  const std::vector<Vec>& qw) {
    const TimeScale& w = P.window();
    std::vector<Sample> out;
    out.reserve(w.size() - 1);
    for (std::size_t i = 1; i < w.size(); ++i) {
        const double nu = w.nu_at(i);
        out.push_back(Sample{i, w.point(i), qw[i - 1], (qw[i] - qw[i - 1]) / nu, nu});
    }
    return out;
}

std::vector<Sample> delta_samples(const VariationalProblem& P,
                                  const std::vector<Vec>& qw) {
    const TimeScale& w = P.window();
    std::vector<Sample> out;
    out.reserve(w.size() - 1);
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        const double mu = w.mu_at(i);
        out.push_back(Sample{i, w.point(i), qw[i + 1], (qw[i + 1] - qw[i]) / mu, mu});
    }
    return out;
}

void require_generator_dim(const VariationalProblem& P,
                           const SymmetryGenerators& g) {
    if (g.dim() != P.dim()) {
        throw DimensionMismatch("generator dimension " + std::to_string(g.dim()) +
                                " does not match problem dimension " +
                                std::to_string(P.dim()));
    }
}

}  // namespace

double evaluate_functional(const VariationalProblem& P, const GridFunction& q) {
    const auto qw = window_values(P, q);
    const Lagrangian& L = P.lagrangian();
    const auto samples = P.flavor() == Flavor::Nabla ? nabla_samples(P, qw)
                                                     : delta_samples(P, qw);
    double total = 0.0;
    for (const Sample& s : samples) {
        total += s.weight * L.eval(s.t, s.u, s.v);
    }
    return total;
}

bool boundary_feasible(const VariationalProblem& P, const GridFunction& q,
                       double tol) {
    const Vec qa = q.value_at(P.a());
    const Vec qb = q.value_at(P.b());
    return max_abs(qa - P.boundary_a()) <= tol && max_abs(qb - P.boundary_b()) <= tol;
}

ConstancyReport el_residual_nabla(const VariationalProblem& P,
                                  const GridFunction& q, double tol) {
    require_flavor(P, Flavor::Nabla, "el_residual_nabla");
    const auto qw = window_values(P, q);
    const Lagrangian& L = P.lagrangian();
    std::vector<Vec> values;
    Vec running(P.dim(), 0.0);
    for (const Sample& s : nabla_samples(P, qw)) {
        const Vec d2 = L.d2(s.t, s.u, s.v);
        for (std::size_t c = 0; c < running.size(); ++c) {
            running[c] += s.weight * d2[c];
        }
        values.push_back(L.d3(s.t, s.u, s.v) - running);
    }
    return make_constancy_report(P.window().kappa_down(), std::move(values), tol);
}

ConstancyReport el_residual_delta(const VariationalProblem& P,
                                  const GridFunction& q, double tol) {
    require_flavor(P, Flavor::Delta, "el_residual_delta");
    const auto qw = window_values(P, q);
    const Lagrangian& L = P.lagrangian();
    std::vector<Vec> values;
    Vec running(P.dim(), 0.0);
    for (const Sample& s : delta_samples(P, qw)) {
        // Left-closed running integral: d2 at t is not yet included at t.
        values.push_back(L.d3(s.t, s.u, s.v) - running);
        const Vec d2 = L.d2(s.t, s.u, s.v);
        for (std::size_t c = 0; c < running.size(); ++c) {
            running[c] += s.weight * d2[c];
        }
    }
    return make_constancy_report(P.window().kappa_up(), std::move(values), tol);
}

NoetherResult noether_quantity_nabla(const VariationalProblem& P,
                                     const SymmetryGenerators& g,
                                     const GridFunction& q, double tol) {
    require_flavor(P, Flavor::Nabla, "noether_quantity_nabla");
    require_generator_dim(P, g);
    const auto qw = window_values(P, q);
    const Lagrangian& L = P.lagrangian();
    std::vector<double> values;
    for (const Sample& s : nabla_samples(P, qw)) {
        const Vec& q_here = qw[s.idx];
        const double Lval = L.eval(s.t, s.u, s.v);
        const double d1 = L.d1(s.t, s.u, s.v);
        const Vec d3 = L.d3(s.t, s.u, s.v);
        Vec xi(P.dim());
        for (std::size_t c = 0; c < xi.size(); ++c) {
            xi[c] = g.xi[c].eval(s.t, q_here, {});
        }
        const double tau = g.tau.eval(s.t, q_here, {});
        values.push_back(dot(d3, xi) +
                         (Lval - dot(d3, s.v) + d1 * s.weight) * tau);
    }
    GridFunction quantity = GridFunction::scalar(P.window().kappa_down(), values);
    std::vector<Vec> wrapped;
    wrapped.reserve(values.size());
    for (double v : values) wrapped.push_back(Vec{v});
    return NoetherResult{quantity, make_constancy_report(quantity.scale(),
                                                         std::move(wrapped), tol)};
}

NoetherResult noether_quantity_delta(const VariationalProblem& P,
                                     const SymmetryGenerators& g,
                                     const GridFunction& q, double tol) {
    require_flavor(P, Flavor::Delta, "noether_quantity_delta");
    require_generator_dim(P, g);
    const auto qw = window_values(P, q);
    const Lagrangian& L = P.lagrangian();
    std::vector<double> values;
    for (const Sample& s : delta_samples(P, qw)) {
        const Vec& q_here = qw[s.idx];
        const double Lval = L.eval(s.t, s.u, s.v);
        const double d1 = L.d1(s.t, s.u, s.v);
        const Vec d3 = L.d3(s.t, s.u, s.v);
        Vec xi(P.dim());
        for (std::size_t c = 0; c < xi.size(); ++c) {
            xi[c] = g.xi[c].eval(s.t, q_here, {});
        }
        const double tau = g.tau.eval(s.t, q_here, {});
        values.push_back(dot(d3, xi) -
                         (Lval - dot(d3, s.v) - d1 * s.weight) * tau);
    }
    GridFunction quantity = GridFunction::scalar(P.window().kappa_up(), values);
    std::vector<Vec> wrapped;
    wrapped.reserve(values.size());
    for (double v : values) wrapped.push_back(Vec{v});
    return NoetherResult{quantity, make_constancy_report(quantity.scale(),
                                                         std::move(wrapped), tol)};
}

namespace {

DbrReport finish_dbr_report(GridFunction h, std::vector<double> residual_values,
                            TimeScale residual_domain,
                            const std::vector<double>& d1_values, double tol) {
    GridFunction residual = GridFunction::scalar(std::move(residual_domain),
                                                 std::move(residual_values));
    double max_abs_residual = 0.0;
    for (std::size_t i = 0; i < residual.size(); ++i) {
        max_abs_residual = std::max(max_abs_residual,
                                    std::abs(residual.scalar_value(i)));
    }
    bool autonomous = true;
    for (double d1 : d1_values) {
        if (std::abs(d1) > 1e-12) {
            autonomous = false;
            break;
        }
    }
    std::vector<Vec> wrapped;
    wrapped.reserve(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
        wrapped.push_back(h.value(i));
    }
    ConstancyReport h_constancy = make_constancy_report(h.scale(), std::move(wrapped), tol);
    return DbrReport{std::move(h),     std::move(residual),
                     max_abs_residual, tol,
                     max_abs_residual <= tol, autonomous,
                     std::move(h_constancy)};
}

}  // namespace

DbrReport dbr_residual_nabla(const VariationalProblem& P, const GridFunction& q,
                             double tol) {
    require_flavor(P, Flavor::Nabla, "dbr_residual_nabla");
    if (P.window().size() < 3) {
        throw TooSmall("the second-equation residual needs at least 3 points in [a, b]");
    }
    const auto qw = window_values(P, q);
    const Lagrangian& L = P.lagrangian();
    const auto samples = nabla_samples(P, qw);
    std::vector<double> h_values;
    std::vector<double> d1_values;
    for (const Sample& s : samples) {
        const double Lval = L.eval(s.t, s.u, s.v);
        const double d1 = L.d1(s.t, s.u, s.v);
        const Vec d3 = L.d3(s.t, s.u, s.v);
        h_values.push_back(-Lval + dot(d3, s.v) - d1 * s.weight);
        d1_values.push_back(d1);
    }
    GridFunction h = GridFunction::scalar(P.window().kappa_down(), h_values);
    std::vector<double> residual;
    for (std::size_t i = 1; i < samples.size(); ++i) {
        const double nu = samples[i].weight;
        residual.push_back((h_values[i] - h_values[i - 1]) / nu + d1_values[i]);
    }
    return finish_dbr_report(std::move(h), std::move(residual),
                             P.window().kappa_down().kappa_down(), d1_values, tol);
}

DbrReport dbr_residual_delta(const VariationalProblem& P, const GridFunction& q,
                             double tol) {
    require_flavor(P, Flavor::Delta, "dbr_residual_delta");
    if (P.window().size() < 3) {
        throw TooSmall("the second-equation residual needs at least 3 points in [a, b]");
    }
    const auto qw = window_values(P, q);
    const Lagrangian& L = P.lagrangian();
    const auto samples = delta_samples(P, qw);
    std::vector<double> h_values;
    std::vector<double> d1_values;
    for (const Sample& s : samples) {
        const double Lval = L.eval(s.t, s.u, s.v);
        const double d1 = L.d1(s.t, s.u, s.v);
        const Vec d3 = L.d3(s.t, s.u, s.v);
        h_values.push_back(-Lval + dot(d3, s.v) + d1 * s.weight);
        d1_values.push_back(d1);
    }
    GridFunction h = GridFunction::scalar(P.window().kappa_up(), h_values);
    std::vector<double> residual;
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
        const double mu = samples[i].weight;
        residual.push_back((h_values[i + 1] - h_values[i]) / mu + d1_values[i]);
    }
    return finish_dbr_report(std::move(h), std::move(residual),
                             P.window().kappa_up().kappa_up(), d1_values, tol);
}

GridFunction invariance_residual(const VariationalProblem& P,
                                 const SymmetryGenerators& g,
                                 const GridFunction& q) {
    require_flavor(P, Flavor::Nabla, "invariance_residual");
    require_generator_dim(P, g);
    const auto qw = window_values(P, q);
    const Lagrangian& L = P.lagrangian();
    const TimeScale& w = P.window();

    std::vector<double> tau_at(w.size());
    std::vector<Vec> xi_at(w.size(), Vec(P.dim()));
    for (std::size_t i = 0; i < w.size(); ++i) {
        tau_at[i] = g.tau.eval(w.point(i), qw[i], {});
        for (std::size_t c = 0; c < P.dim(); ++c) {
            xi_at[i][c] = g.xi[c].eval(w.point(i), qw[i], {});
        }
    }

    std::vector<double> values;
    for (const Sample& s : nabla_samples(P, qw)) {
        const std::size_t i = s.idx;
        const double Lval = L.eval(s.t, s.u, s.v);
        const double d1 = L.d1(s.t, s.u, s.v);
        const Vec d2 = L.d2(s.t, s.u, s.v);
        const Vec d3 = L.d3(s.t, s.u, s.v);
        const Vec xi_nabla = (xi_at[i] - xi_at[i - 1]) / s.weight;
        const double tau_nabla = (tau_at[i] - tau_at[i - 1]) / s.weight;
        values.push_back(d1 * tau_at[i] + dot(d2, xi_at[i - 1]) +
                         dot(d3, xi_nabla) + Lval * tau_nabla -
                         dot(s.v, d3) * tau_nabla);
    }
    return GridFunction::scalar(w.kappa_down(), std::move(values));
}

GridFunction invariance_check_numeric(const VariationalProblem& P,
                                      const SymmetryGenerators& g,
                                      const GridFunction& q, double eps) {
    require_flavor(P, Flavor::Nabla, "invariance_check_numeric");
    require_generator_dim(P, g);
    if (!(eps > 0.0)) {
        throw Error("eps must be positive");
    }
    const auto qw = window_values(P, q);
    const Lagrangian& L = P.lagrangian();
    const TimeScale& w = P.window();

    std::vector<double> tau_at(w.size());
    std::vector<Vec> xi_at(w.size(), Vec(P.dim()));
    for (std::size_t i = 0; i < w.size(); ++i) {
        tau_at[i] = g.tau.eval(w.point(i), qw[i], {});
        for (std::size_t c = 0; c < P.dim(); ++c) {
            xi_at[i][c] = g.xi[c].eval(w.point(i), qw[i], {});
        }
    }

    // Transformed integrand at one signed eps, sampled on (a, b].
    auto transformed = [&](double e) {
        std::vector<double> out;
        out.reserve(w.size() - 1);
        for (std::size_t i = 1; i < w.size(); ++i) {
            const double nu = w.nu_at(i);
            const double time_slope =
                ((w.point(i) + e * tau_at[i]) - (w.point(i - 1) + e * tau_at[i - 1])) /
                nu;
            if (!(time_slope > 0.0)) {
                throw NotMonotone("transformed time map is not strictly increasing at t = " +
                                  std::to_string(w.point(i)) +
                                  " for eps = " + std::to_string(e));
            }
            Vec state_rho(P.dim());
            Vec state_slope(P.dim());
            for (std::size_t c = 0; c < P.dim(); ++c) {
                const double b_here = qw[i][c] + e * xi_at[i][c];
                const double b_prev = qw[i - 1][c] + e * xi_at[i - 1][c];
                state_rho[c] = b_prev;
                state_slope[c] = (b_here - b_prev) / nu / time_slope;
            }
            const double time_here = w.point(i) + e * tau_at[i];
            out.push_back(L.eval(time_here, state_rho, state_slope) * time_slope);
        }
        return out;
    };

    const std::vector<double> plus = transformed(eps);
    const std::vector<double> minus = transformed(-eps);
    std::vector<double> derivative(plus.size());
    for (std::size_t i = 0; i < plus.size(); ++i) {
        derivative[i] = (plus[i] - minus[i]) / (2.0 * eps);
    }
    return GridFunction::scalar(w.kappa_down(), std::move(derivative));
}

}  // namespace tsvar
