// SPDX-License-Identifier: MIT
#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "tsvar/errors.hpp"
#include "tsvar/vec.hpp"

namespace tsvar {

namespace detail {
struct ExprNode;
using NodePtr = std::shared_ptr<const ExprNode>;
}  // namespace detail

/// A parsed arithmetic expression over the variables t, q1..qn and
/// (optionally) v1..vn, with exact forward-mode partial derivatives.
///
/// Grammar (EBNF):
///
///   expr    = term { ("+" | "-") term } ;
///   term    = unary { ("*" | "/") unary } ;
///   unary   = "-" unary | power ;
///   power   = primary [ "^" unary ] ;            (* right-associative *)
///   primary = number | ident | ident "(" expr ")" | "(" expr ")" ;
///
/// "^" binds tighter than unary minus, so -x^2 means -(x^2). Identifiers are
/// t, q1..qn, v1..vn (q and v alias q1 and v1 when n = 1) and the functions
/// sin, cos, exp, ln, sqrt, abs. Integer exponents on negative bases are
/// allowed; fractional ones raise DomainError.
class Expression {
public:
    /// Parse source text. Throws SyntaxError (with offset) on malformed
    /// input and UnknownVariable for identifiers outside the declared
    /// dimension (e.g. q3 with dim = 2) or, with with_velocity = false,
    /// any use of v.
    static Expression parse(std::string_view src, std::size_t dim,
                            bool with_velocity);

    std::size_t dim() const noexcept { return dim_; }
    bool with_velocity() const noexcept { return with_velocity_; }

    /// Evaluate at (t, q, v). For expressions parsed without velocity
    /// variables, v may be empty.
    double eval(double t, const Vec& q, const Vec& v) const;

    /// Exact partial derivative with respect to t.
    double d_time(double t, const Vec& q, const Vec& v) const;
    /// Exact gradient with respect to q (one forward pass per component).
    Vec d_state(double t, const Vec& q, const Vec& v) const;
    /// Exact gradient with respect to v.
    Vec d_velocity(double t, const Vec& q, const Vec& v) const;

    /// Substitution t -> -t, v_i -> -v_i (double negations are collapsed,
    /// so the transform is a structural involution).
    Expression dualized() const;
    /// Substitution t -> -t only.
    Expression time_negated() const;
    /// The expression with an overall sign flip.
    Expression negated() const;

    /// Render to text that re-parses to a structurally identical tree.
    std::string text() const;

    /// Structural equality (positions ignored).
    bool identical(const Expression& other) const;

private:
    Expression(detail::NodePtr root, std::size_t dim, bool with_velocity)
        : root_(std::move(root)), dim_(dim), with_velocity_(with_velocity) {}

    detail::NodePtr root_;
    std::size_t dim_ = 1;
    bool with_velocity_ = true;
};

}  // namespace tsvar
