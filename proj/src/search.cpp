// SPDX-License-Identifier: MIT
#include "tsvar/search.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace tsvar {

GridFunction reconstruct(const TimeScale& scale, const Vec& anchor,
                         const std::vector<Vec>& derivs) {
    if (derivs.size() + 1 != scale.size()) {
        throw LengthMismatch("expected " + std::to_string(scale.size() - 1) +
                             " derivative values, got " +
                             std::to_string(derivs.size()));
    }
    std::vector<Vec> values;
    values.reserve(scale.size());
    values.push_back(anchor);
    for (std::size_t i = 1; i < scale.size(); ++i) {
        const Vec& d = derivs[i - 1];
        if (d.size() != anchor.size()) {
            throw DimensionMismatch("derivative vectors must match the anchor dimension");
        }
        values.push_back(values.back() + scale.nu_at(i) * d);
    }
    return GridFunction(scale, std::move(values));
}

namespace {

struct AlphabetIndex {
    // Flattened cartesian product of the per-component sets: choice k for a
    // step maps to one derivative vector.
    std::vector<Vec> choices;
};

AlphabetIndex flatten_alphabet(const DerivativeAlphabet& alphabet,
                               std::size_t dim) {
    if (alphabet.per_component.size() != dim) {
        throw DimensionMismatch("alphabet needs one value set per component");
    }
    for (std::size_t c = 0; c < dim; ++c) {
        if (alphabet.per_component[c].empty()) {
            throw Error("alphabet component " + std::to_string(c + 1) +
                        " has no values");
        }
    }
    AlphabetIndex index;
    index.choices.push_back(Vec(dim, 0.0));
    for (std::size_t c = 0; c < dim; ++c) {
        std::vector<Vec> next;
        next.reserve(index.choices.size() * alphabet.per_component[c].size());
        for (const Vec& prefix : index.choices) {
            for (double value : alphabet.per_component[c]) {
                Vec extended = prefix;
                extended[c] = value;
                next.push_back(std::move(extended));
            }
        }
        index.choices = std::move(next);
    }
    return index;
}

}  // namespace

std::vector<GridFunction> enumerate_trajectories(const VariationalProblem& P,
                                                 const DerivativeAlphabet& alphabet,
                                                 double boundary_tol,
                                                 unsigned long long cap) {
    const TimeScale& w = P.window();
    const std::size_t steps = w.size() - 1;
    const AlphabetIndex index = flatten_alphabet(alphabet, P.dim());
    const std::size_t radix = index.choices.size();

    double raw_count = 1.0;
    for (std::size_t s = 0; s < steps; ++s) raw_count *= static_cast<double>(radix);
    if (raw_count > static_cast<double>(cap)) {
        throw CapExceeded("enumeration would generate " +
                              std::to_string(raw_count) +
                              " candidates, above the cap of " +
                              std::to_string(cap),
                          raw_count);
    }

    std::vector<GridFunction> feasible;
    std::vector<std::size_t> digits(steps, 0);
    std::vector<Vec> derivs(steps);
    const auto total = static_cast<unsigned long long>(raw_count);
    for (unsigned long long id = 0; id < total; ++id) {
        for (std::size_t s = 0; s < steps; ++s) derivs[s] = index.choices[digits[s]];
        GridFunction q = reconstruct(w, P.boundary_a(), derivs);
        if (max_abs(q.value(w.size() - 1) - P.boundary_b()) <= boundary_tol) {
            feasible.push_back(std::move(q));
        }
        // Mixed-radix odometer, last step fastest.
        for (std::size_t s = steps; s-- > 0;) {
            if (++digits[s] < radix) break;
            digits[s] = 0;
        }
    }
    return feasible;
}

std::vector<ClassificationRow> classify(const VariationalProblem& P,
                                        std::span<const GridFunction> candidates,
                                        const SymmetryGenerators* generators,
                                        double tol, double boundary_tol) {
    std::vector<ClassificationRow> rows;
    rows.reserve(candidates.size());
    for (std::size_t id = 0; id < candidates.size(); ++id) {
        const GridFunction& q = candidates[id];
        ClassificationRow row{};
        row.id = id;
        row.boundary_feasible = boundary_feasible(P, q, boundary_tol);
        row.el_pass = el_residual_nabla(P, q, tol).pass;
        row.dbr_pass = dbr_residual_nabla(P, q, tol).pass;
        if (generators != nullptr) {
            row.noether_spread =
                noether_quantity_nabla(P, *generators, q, tol).report.spread;
        }
        row.value = evaluate_functional(P, q);
        rows.push_back(std::move(row));
    }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const ClassificationRow& x, const ClassificationRow& y) {
                         if (x.value != y.value) return x.value < y.value;
                         return x.id < y.id;
                     });
    return rows;
}

namespace {

/// Dense partial-pivot elimination; the Newton systems here are tiny.
void solve_linear(std::vector<std::vector<double>>& A, std::vector<double>& rhs) {
    const std::size_t n = rhs.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(A[r][col]) > std::abs(A[pivot][col])) pivot = r;
        }
        if (std::abs(A[pivot][col]) < 1e-14) {
            throw SingularJacobian("Jacobian is singular at column " +
                                   std::to_string(col));
        }
        std::swap(A[pivot], A[col]);
        std::swap(rhs[pivot], rhs[col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = A[r][col] / A[col][col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) A[r][c] -= f * A[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    for (std::size_t row = n; row-- > 0;) {
        double s = rhs[row];
        for (std::size_t c = row + 1; c < n; ++c) s -= A[row][c] * rhs[c];
        rhs[row] = s / A[row][row];
    }
}

}  // namespace

GridFunction solve_el_newton(const VariationalProblem& P,
                             const GridFunction& q_init, int max_iter,
                             double step_tol) {
    if (P.flavor() != Flavor::Nabla) {
        throw WrongFlavor("solve_el_newton applies to nabla problems");
    }
    const TimeScale& w = P.window();
    const std::size_t m = w.size();
    if (m < 3) {
        throw TooSmall("Newton solve needs at least 3 points in [a, b]");
    }
    const std::size_t dim = P.dim();
    const Lagrangian& L = P.lagrangian();

    // Current trajectory values: endpoints pinned to the boundary data,
    // interior seeded from q_init.
    std::vector<Vec> qv;
    qv.reserve(m);
    qv.push_back(P.boundary_a());
    for (std::size_t i = 1; i + 1 < m; ++i) {
        qv.push_back(q_init.value_at(w.point(i)));
    }
    qv.push_back(P.boundary_b());

    const std::size_t unknowns = (m - 2) * dim;

    auto el_values = [&](const std::vector<Vec>& vals) {
        std::vector<Vec> E;
        E.reserve(m - 1);
        Vec running(dim, 0.0);
        for (std::size_t i = 1; i < m; ++i) {
            const double nu = w.nu_at(i);
            const Vec v = (vals[i] - vals[i - 1]) / nu;
            const Vec d2 = L.d2(w.point(i), vals[i - 1], v);
            for (std::size_t c = 0; c < dim; ++c) running[c] += nu * d2[c];
            E.push_back(L.d3(w.point(i), vals[i - 1], v) - running);
        }
        return E;
    };

    auto system = [&](const std::vector<Vec>& vals) {
        const std::vector<Vec> E = el_values(vals);
        std::vector<double> F(unknowns);
        std::size_t k = 0;
        for (std::size_t i = 1; i < E.size(); ++i) {
            for (std::size_t c = 0; c < dim; ++c) F[k++] = E[i][c] - E[0][c];
        }
        return F;
    };

    auto max_norm = [](const std::vector<double>& x) {
        double mx = 0.0;
        for (double v : x) mx = std::max(mx, std::abs(v));
        return mx;
    };

    constexpr double kResidualTarget = 1e-10;
    constexpr double kJacobianStep = 1e-7;

    std::vector<double> F = system(qv);
    std::vector<double> history{max_norm(F)};

    for (int iter = 0; iter < max_iter; ++iter) {
        if (history.back() <= kResidualTarget) {
            return GridFunction(w, qv);
        }
        // Finite-difference Jacobian, one column per perturbed interior value.
        std::vector<std::vector<double>> J(unknowns, std::vector<double>(unknowns));
        std::size_t col = 0;
        for (std::size_t i = 1; i + 1 < m; ++i) {
            for (std::size_t c = 0; c < dim; ++c, ++col) {
                const double saved = qv[i][c];
                qv[i][c] = saved + kJacobianStep;
                const std::vector<double> Fp = system(qv);
                qv[i][c] = saved;
                for (std::size_t r = 0; r < unknowns; ++r) {
                    J[r][col] = (Fp[r] - F[r]) / kJacobianStep;
                }
            }
        }
        std::vector<double> step(unknowns);
        for (std::size_t r = 0; r < unknowns; ++r) step[r] = -F[r];
        solve_linear(J, step);

        // Halving line search on the max-norm residual.
        double lambda = 1.0;
        bool accepted = false;
        while (lambda >= 1.0 / 1048576.0) {
            std::vector<Vec> trial = qv;
            std::size_t k = 0;
            for (std::size_t i = 1; i + 1 < m; ++i) {
                for (std::size_t c = 0; c < dim; ++c) {
                    trial[i][c] += lambda * step[k++];
                }
            }
            const std::vector<double> Ft = system(trial);
            const double norm = max_norm(Ft);
            if (norm < history.back() || norm <= kResidualTarget) {
                qv = std::move(trial);
                F = Ft;
                history.push_back(norm);
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!accepted) {
            throw NoConvergence("line search stalled at residual " +
                                    std::to_string(history.back()),
                                history);
        }
        if (lambda * max_norm(step) <= step_tol &&
            history.back() > kResidualTarget) {
            throw NoConvergence("step size underflow at residual " +
                                    std::to_string(history.back()),
                                history);
        }
    }
    if (history.back() <= kResidualTarget) {
        return GridFunction(w, qv);
    }
    throw NoConvergence("no convergence after " + std::to_string(max_iter) +
                            " iterations; final residual " +
                            std::to_string(history.back()),
                        history);
}

}  // namespace tsvar
