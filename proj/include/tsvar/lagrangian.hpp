// SPDX-License-Identifier: MIT
#pragma once

#include <string_view>

#include "tsvar/expression.hpp"

namespace tsvar {

/// A Lagrangian L(t, q, v) with exact forward-mode partials d1 = dL/dt,
/// d2 = dL/dq and d3 = dL/dv.
class Lagrangian {
public:
    explicit Lagrangian(Expression expr) : expr_(std::move(expr)) {}

    /// Parse L from text for state dimension n.
    static Lagrangian parse(std::string_view src, std::size_t n) {
        return Lagrangian(Expression::parse(src, n, /*with_velocity=*/true));
    }

    std::size_t dim() const noexcept { return expr_.dim(); }

    double eval(double t, const Vec& q, const Vec& v) const {
        return expr_.eval(t, q, v);
    }
    double d1(double t, const Vec& q, const Vec& v) const {
        return expr_.d_time(t, q, v);
    }
    Vec d2(double t, const Vec& q, const Vec& v) const {
        return expr_.d_state(t, q, v);
    }
    Vec d3(double t, const Vec& q, const Vec& v) const {
        return expr_.d_velocity(t, q, v);
    }

    const Expression& expression() const noexcept { return expr_; }

private:
    Expression expr_;
};

/// The dual Lagrangian L*(s, x, v) = L(-s, x, -v), realized as a sign
/// substitution on the syntax tree. Partials transform as d1* = -d1,
/// d2* = d2, d3* = -d3, each evaluated at the flipped arguments.
inline Lagrangian dual_lagrangian(const Lagrangian& L) {
    return Lagrangian(L.expression().dualized());
}

}  // namespace tsvar
