// SPDX-License-Identifier: MIT
#include "tsvar/expression.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

namespace tsvar {
namespace detail {

struct ExprNode {
    enum class Kind {
        Literal,
        Time,
        State,
        Velocity,
        Neg,
        Add,
        Sub,
        Mul,
        Div,
        Pow,
        Sin,
        Cos,
        Exp,
        Ln,
        Sqrt,
        Abs,
    };

    Kind kind;
    double literal = 0.0;
    std::size_t index = 0;  // component index for State / Velocity
    NodePtr a;
    NodePtr b;
};

using Kind = ExprNode::Kind;

namespace {

NodePtr make_literal(double x) {
    auto n = std::make_shared<ExprNode>();
    n->kind = Kind::Literal;
    n->literal = x;
    return n;
}

NodePtr make_var(Kind kind, std::size_t index) {
    auto n = std::make_shared<ExprNode>();
    n->kind = kind;
    n->index = index;
    return n;
}

NodePtr make_unary(Kind kind, NodePtr a) {
    auto n = std::make_shared<ExprNode>();
    n->kind = kind;
    n->a = std::move(a);
    return n;
}

NodePtr make_binary(Kind kind, NodePtr a, NodePtr b) {
    auto n = std::make_shared<ExprNode>();
    n->kind = kind;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

/// Negation with peepholes for double negation and literals, so that
/// applying a sign transform twice restores the original tree.
NodePtr make_neg(NodePtr a) {
    if (a->kind == Kind::Neg) return a->a;
    if (a->kind == Kind::Literal) return make_literal(-a->literal);
    return make_unary(Kind::Neg, std::move(a));
}

const char* call_name(Kind k) {
    switch (k) {
        case Kind::Sin: return "sin";
        case Kind::Cos: return "cos";
        case Kind::Exp: return "exp";
        case Kind::Ln: return "ln";
        case Kind::Sqrt: return "sqrt";
        case Kind::Abs: return "abs";
        default: return "?";
    }
}

int precedence(Kind k) {
    switch (k) {
        case Kind::Add:
        case Kind::Sub:
            return 1;
        case Kind::Mul:
        case Kind::Div:
            return 2;
        case Kind::Neg:
            return 3;
        case Kind::Pow:
            return 4;
        default:
            return 5;
    }
}

std::string format_literal(double x) {
    if (x == 0.0) return "0";
    // Shortest representation that round-trips to the same double.
    std::array<char, 32> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    (void)ec;
    return std::string(buf.data(), end);
}

void unparse(const ExprNode& n, std::size_t dim, std::string& out);

void unparse_child(const ExprNode& child, std::size_t dim, bool parens,
                   std::string& out) {
    if (parens) out += '(';
    unparse(child, dim, out);
    if (parens) out += ')';
}

void unparse(const ExprNode& n, std::size_t dim, std::string& out) {
    const int prec = precedence(n.kind);
    switch (n.kind) {
        case Kind::Literal:
            out += format_literal(n.literal);
            return;
        case Kind::Time:
            out += 't';
            return;
        case Kind::State:
            out += 'q';
            if (dim > 1) out += std::to_string(n.index + 1);
            return;
        case Kind::Velocity:
            out += 'v';
            if (dim > 1) out += std::to_string(n.index + 1);
            return;
        case Kind::Neg:
            out += '-';
            unparse_child(*n.a, dim, precedence(n.a->kind) < prec, out);
            return;
        case Kind::Add:
        case Kind::Sub:
            unparse_child(*n.a, dim, precedence(n.a->kind) < prec, out);
            out += (n.kind == Kind::Add) ? " + " : " - ";
            unparse_child(*n.b, dim, precedence(n.b->kind) <= prec, out);
            return;
        case Kind::Mul:
        case Kind::Div:
            unparse_child(*n.a, dim, precedence(n.a->kind) < prec, out);
            out += (n.kind == Kind::Mul) ? '*' : '/';
            unparse_child(*n.b, dim, precedence(n.b->kind) <= prec &&
                                         n.b->kind != Kind::Neg,
                          out);
            return;
        case Kind::Pow:
            // Right-associative; the exponent slot accepts a leading minus.
            unparse_child(*n.a, dim, precedence(n.a->kind) <= prec, out);
            out += '^';
            unparse_child(*n.b, dim, precedence(n.b->kind) < 3, out);
            return;
        default:
            out += call_name(n.kind);
            out += '(';
            unparse(*n.a, dim, out);
            out += ')';
            return;
    }
}

std::string node_text(const ExprNode& n, std::size_t dim) {
    std::string out;
    unparse(n, dim, out);
    return out;
}

// --- forward-mode dual numbers -------------------------------------------

struct Dual {
    double val;
    double dot;
};

inline double value_of(double x) { return x; }
inline double value_of(const Dual& x) { return x.val; }

inline double op_neg(double a) { return -a; }
inline Dual op_neg(const Dual& a) { return {-a.val, -a.dot}; }

inline double op_add(double a, double b) { return a + b; }
inline Dual op_add(const Dual& a, const Dual& b) {
    return {a.val + b.val, a.dot + b.dot};
}

inline double op_sub(double a, double b) { return a - b; }
inline Dual op_sub(const Dual& a, const Dual& b) {
    return {a.val - b.val, a.dot - b.dot};
}

inline double op_mul(double a, double b) { return a * b; }
inline Dual op_mul(const Dual& a, const Dual& b) {
    return {a.val * b.val, a.dot * b.val + a.val * b.dot};
}

inline double op_div(double a, double b) { return a / b; }
inline Dual op_div(const Dual& a, const Dual& b) {
    return {a.val / b.val, (a.dot * b.val - a.val * b.dot) / (b.val * b.val)};
}

inline double op_sin(double a) { return std::sin(a); }
inline Dual op_sin(const Dual& a) { return {std::sin(a.val), std::cos(a.val) * a.dot}; }

inline double op_cos(double a) { return std::cos(a); }
inline Dual op_cos(const Dual& a) { return {std::cos(a.val), -std::sin(a.val) * a.dot}; }

inline double op_exp(double a) { return std::exp(a); }
inline Dual op_exp(const Dual& a) {
    const double e = std::exp(a.val);
    return {e, e * a.dot};
}

inline double op_ln(double a) { return std::log(a); }
inline Dual op_ln(const Dual& a) { return {std::log(a.val), a.dot / a.val}; }

inline double op_sqrt(double a) { return std::sqrt(a); }
inline Dual op_sqrt(const Dual& a) {
    const double s = std::sqrt(a.val);
    return {s, a.dot / (2.0 * s)};
}

// abs is non-smooth at 0; the slope there follows the right derivative.
inline double op_abs(double a) { return std::abs(a); }
inline Dual op_abs(const Dual& a) {
    return {std::abs(a.val), a.val >= 0.0 ? a.dot : -a.dot};
}

inline bool near_integer(double x) {
    return std::abs(x - std::round(x)) <= 1e-9 && std::abs(x) < 9.0e15;
}

double pow_value(const ExprNode& n, std::size_t dim, double base, double expo) {
    if (base > 0.0) return std::pow(base, expo);
    if (base == 0.0) {
        if (expo > 0.0) return 0.0;
        if (expo == 0.0) return 1.0;
        throw DomainError("zero raised to a negative power", node_text(n, dim));
    }
    if (!near_integer(expo)) {
        throw DomainError("fractional power of a negative base", node_text(n, dim));
    }
    return std::pow(base, std::round(expo));
}

double op_pow(const ExprNode& n, std::size_t dim, double a, double b) {
    return pow_value(n, dim, a, b);
}

Dual op_pow(const ExprNode& n, std::size_t dim, const Dual& a, const Dual& b) {
    if (b.dot == 0.0) {
        const double e = b.val;
        const double val = pow_value(n, dim, a.val, e);
        if (e == 0.0) return {val, 0.0};
        if (a.val == 0.0) {
            if (e == 1.0) return {val, a.dot};
            if (e > 1.0) return {val, 0.0};
            if (a.dot == 0.0) return {val, 0.0};
            throw DomainError("power of a zero base is not differentiable here",
                              node_text(n, dim));
        }
        const double slope = e * pow_value(n, dim, a.val, e - 1.0);
        return {val, slope * a.dot};
    }
    if (a.val <= 0.0) {
        throw DomainError("variable exponent requires a positive base",
                          node_text(n, dim));
    }
    const double val = std::pow(a.val, b.val);
    return {val, val * (b.dot * std::log(a.val) + b.val * a.dot / a.val)};
}

template <class T>
struct EvalContext {
    T t;
    std::vector<T> q;
    std::vector<T> v;
    std::size_t dim;
};

template <class T>
T eval_node(const ExprNode& n, const EvalContext<T>& ctx) {
    switch (n.kind) {
        case Kind::Literal:
            if constexpr (std::is_same_v<T, Dual>) {
                return Dual{n.literal, 0.0};
            } else {
                return n.literal;
            }
        case Kind::Time:
            return ctx.t;
        case Kind::State:
            return ctx.q[n.index];
        case Kind::Velocity:
            return ctx.v[n.index];
        case Kind::Neg:
            return op_neg(eval_node(*n.a, ctx));
        case Kind::Add:
            return op_add(eval_node(*n.a, ctx), eval_node(*n.b, ctx));
        case Kind::Sub:
            return op_sub(eval_node(*n.a, ctx), eval_node(*n.b, ctx));
        case Kind::Mul:
            return op_mul(eval_node(*n.a, ctx), eval_node(*n.b, ctx));
        case Kind::Div: {
            T num = eval_node(*n.a, ctx);
            T den = eval_node(*n.b, ctx);
            if (value_of(den) == 0.0) {
                throw DomainError("division by zero", node_text(n, ctx.dim));
            }
            return op_div(num, den);
        }
        case Kind::Pow:
            return op_pow(n, ctx.dim, eval_node(*n.a, ctx), eval_node(*n.b, ctx));
        case Kind::Sin:
            return op_sin(eval_node(*n.a, ctx));
        case Kind::Cos:
            return op_cos(eval_node(*n.a, ctx));
        case Kind::Exp:
            return op_exp(eval_node(*n.a, ctx));
        case Kind::Ln: {
            T arg = eval_node(*n.a, ctx);
            if (value_of(arg) <= 0.0) {
                throw DomainError("ln of a non-positive value", node_text(n, ctx.dim));
            }
            return op_ln(arg);
        }
        case Kind::Sqrt: {
            T arg = eval_node(*n.a, ctx);
            if (value_of(arg) < 0.0) {
                throw DomainError("sqrt of a negative value", node_text(n, ctx.dim));
            }
            return op_sqrt(arg);
        }
        case Kind::Abs:
            return op_abs(eval_node(*n.a, ctx));
    }
    throw Error("unreachable expression kind");
}

// --- recursive-descent parser ---------------------------------------------

struct Parser {
    std::string_view src;
    std::size_t pos = 0;
    std::size_t dim;
    bool with_velocity;

    void skip_ws() {
        while (pos < src.size() &&
               std::isspace(static_cast<unsigned char>(src[pos]))) {
            ++pos;
        }
    }

    bool at_end() {
        skip_ws();
        return pos >= src.size();
    }

    char peek() {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }

    bool consume(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }

    NodePtr parse_expr() {
        NodePtr left = parse_term();
        while (true) {
            const char c = peek();
            if (c == '+' || c == '-') {
                ++pos;
                NodePtr right = parse_term();
                left = make_binary(c == '+' ? Kind::Add : Kind::Sub,
                                   std::move(left), std::move(right));
            } else {
                return left;
            }
        }
    }

    NodePtr parse_term() {
        NodePtr left = parse_unary();
        while (true) {
            const char c = peek();
            if (c == '*' || c == '/') {
                ++pos;
                NodePtr right = parse_unary();
                left = make_binary(c == '*' ? Kind::Mul : Kind::Div,
                                   std::move(left), std::move(right));
            } else {
                return left;
            }
        }
    }

    NodePtr parse_unary() {
        if (consume('-')) {
            return make_unary(Kind::Neg, parse_unary());
        }
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_primary();
        if (consume('^')) {
            NodePtr expo = parse_unary();  // right-associative
            return make_binary(Kind::Pow, std::move(base), std::move(expo));
        }
        return base;
    }

    NodePtr parse_primary() {
        skip_ws();
        if (pos >= src.size()) {
            throw SyntaxError("unexpected end of expression", pos);
        }
        const char c = src[pos];
        if (c == '(') {
            ++pos;
            NodePtr inner = parse_expr();
            if (!consume(')')) {
                throw SyntaxError("expected ')'", pos);
            }
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && pos + 1 < src.size() &&
             std::isdigit(static_cast<unsigned char>(src[pos + 1])))) {
            return parse_number();
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            return parse_identifier();
        }
        throw SyntaxError(std::string("expected a value, found '") + c + "'", pos);
    }

    NodePtr parse_number() {
        const std::size_t start = pos;
        while (pos < src.size() &&
               std::isdigit(static_cast<unsigned char>(src[pos]))) {
            ++pos;
        }
        if (pos < src.size() && src[pos] == '.') {
            ++pos;
            while (pos < src.size() &&
                   std::isdigit(static_cast<unsigned char>(src[pos]))) {
                ++pos;
            }
        }
        if (pos < src.size() && (src[pos] == 'e' || src[pos] == 'E')) {
            std::size_t mark = pos;
            ++pos;
            if (pos < src.size() && (src[pos] == '+' || src[pos] == '-')) ++pos;
            if (pos < src.size() &&
                std::isdigit(static_cast<unsigned char>(src[pos]))) {
                while (pos < src.size() &&
                       std::isdigit(static_cast<unsigned char>(src[pos]))) {
                    ++pos;
                }
            } else {
                pos = mark;  // "2e" with no exponent digits: stop before 'e'
            }
        }
        const std::string token(src.substr(start, pos - start));
        errno = 0;
        char* end = nullptr;
        const double value = std::strtod(token.c_str(), &end);
        if (end != token.c_str() + token.size()) {
            throw SyntaxError("malformed number '" + token + "'", start);
        }
        return make_literal(value);
    }

    NodePtr parse_identifier() {
        const std::size_t start = pos;
        while (pos < src.size() &&
               (std::isalnum(static_cast<unsigned char>(src[pos])) ||
                src[pos] == '_')) {
            ++pos;
        }
        const std::string name(src.substr(start, pos - start));
        if (peek() == '(') {
            ++pos;
            Kind kind;
            if (name == "sin") kind = Kind::Sin;
            else if (name == "cos") kind = Kind::Cos;
            else if (name == "exp") kind = Kind::Exp;
            else if (name == "ln") kind = Kind::Ln;
            else if (name == "sqrt") kind = Kind::Sqrt;
            else if (name == "abs") kind = Kind::Abs;
            else throw SyntaxError("unknown function '" + name + "'", start);
            NodePtr arg = parse_expr();
            if (!consume(')')) {
                throw SyntaxError("expected ')'", pos);
            }
            return make_unary(kind, std::move(arg));
        }
        return resolve_variable(name, start);
    }

    NodePtr resolve_variable(const std::string& name, std::size_t at) {
        if (name == "t") return make_var(Kind::Time, 0);
        if (name.size() >= 1 && (name[0] == 'q' || name[0] == 'v')) {
            const bool velocity = (name[0] == 'v');
            if (velocity && !with_velocity) {
                throw UnknownVariable(
                    "velocity variable '" + name + "' is not allowed here", at);
            }
            std::size_t index = 0;
            if (name.size() == 1) {
                if (dim != 1) {
                    throw UnknownVariable("'" + name + "' is ambiguous for dimension " +
                                              std::to_string(dim) + "; use " +
                                              name + "1.." + name +
                                              std::to_string(dim),
                                          at);
                }
            } else {
                for (std::size_t i = 1; i < name.size(); ++i) {
                    if (!std::isdigit(static_cast<unsigned char>(name[i]))) {
                        throw UnknownVariable("unknown identifier '" + name + "'", at);
                    }
                }
                const long parsed = std::strtol(name.c_str() + 1, nullptr, 10);
                if (parsed < 1 || static_cast<std::size_t>(parsed) > dim) {
                    throw UnknownVariable("variable '" + name +
                                              "' is out of range for dimension " +
                                              std::to_string(dim),
                                          at);
                }
                index = static_cast<std::size_t>(parsed - 1);
            }
            return make_var(velocity ? Kind::Velocity : Kind::State, index);
        }
        throw UnknownVariable("unknown identifier '" + name + "'", at);
    }
};

NodePtr transform_signs(const NodePtr& n, bool flip_time, bool flip_velocity) {
    switch (n->kind) {
        case Kind::Literal:
            return n;
        case Kind::Time:
            return flip_time ? make_neg(n) : n;
        case Kind::State:
            return n;
        case Kind::Velocity:
            return flip_velocity ? make_neg(n) : n;
        case Kind::Neg:
            return make_neg(transform_signs(n->a, flip_time, flip_velocity));
        default: {
            NodePtr a = n->a ? transform_signs(n->a, flip_time, flip_velocity)
                             : nullptr;
            NodePtr b = n->b ? transform_signs(n->b, flip_time, flip_velocity)
                             : nullptr;
            if (a == n->a && b == n->b) return n;
            auto copy = std::make_shared<ExprNode>(*n);
            copy->a = std::move(a);
            copy->b = std::move(b);
            return copy;
        }
    }
}

bool nodes_identical(const ExprNode& x, const ExprNode& y) {
    if (x.kind != y.kind) return false;
    switch (x.kind) {
        case Kind::Literal:
            return x.literal == y.literal;
        case Kind::Time:
            return true;
        case Kind::State:
        case Kind::Velocity:
            return x.index == y.index;
        default:
            if (static_cast<bool>(x.a) != static_cast<bool>(y.a)) return false;
            if (static_cast<bool>(x.b) != static_cast<bool>(y.b)) return false;
            if (x.a && !nodes_identical(*x.a, *y.a)) return false;
            if (x.b && !nodes_identical(*x.b, *y.b)) return false;
            return true;
    }
}

}  // namespace
}  // namespace detail

using detail::Dual;
using detail::EvalContext;

Expression Expression::parse(std::string_view src, std::size_t dim,
                             bool with_velocity) {
    if (dim < 1) {
        throw DimensionMismatch("expression dimension must be >= 1");
    }
    detail::Parser parser{src, 0, dim, with_velocity};
    detail::NodePtr root = parser.parse_expr();
    if (!parser.at_end()) {
        throw SyntaxError("unexpected trailing input", parser.pos);
    }
    return Expression(std::move(root), dim, with_velocity);
}

namespace {

void check_dims(const Expression& e, const Vec& q, const Vec& v) {
    if (q.size() != e.dim()) {
        throw DimensionMismatch("state vector has dimension " +
                                std::to_string(q.size()) + ", expected " +
                                std::to_string(e.dim()));
    }
    if (e.with_velocity() && v.size() != e.dim()) {
        throw DimensionMismatch("velocity vector has dimension " +
                                std::to_string(v.size()) + ", expected " +
                                std::to_string(e.dim()));
    }
}

EvalContext<Dual> dual_context(double t, const Vec& q, const Vec& v,
                               std::size_t dim) {
    EvalContext<Dual> ctx;
    ctx.t = Dual{t, 0.0};
    ctx.q.reserve(q.size());
    for (double x : q) ctx.q.push_back(Dual{x, 0.0});
    ctx.v.reserve(v.size());
    for (double x : v) ctx.v.push_back(Dual{x, 0.0});
    ctx.dim = dim;
    return ctx;
}

}  // namespace

double Expression::eval(double t, const Vec& q, const Vec& v) const {
    check_dims(*this, q, v);
    EvalContext<double> ctx{t, std::vector<double>(q.begin(), q.end()),
                            std::vector<double>(v.begin(), v.end()), dim_};
    return detail::eval_node(*root_, ctx);
}

double Expression::d_time(double t, const Vec& q, const Vec& v) const {
    check_dims(*this, q, v);
    auto ctx = dual_context(t, q, v, dim_);
    ctx.t.dot = 1.0;
    return detail::eval_node(*root_, ctx).dot;
}

Vec Expression::d_state(double t, const Vec& q, const Vec& v) const {
    check_dims(*this, q, v);
    auto ctx = dual_context(t, q, v, dim_);
    Vec grad(dim_, 0.0);
    for (std::size_t i = 0; i < dim_; ++i) {
        ctx.q[i].dot = 1.0;
        grad[i] = detail::eval_node(*root_, ctx).dot;
        ctx.q[i].dot = 0.0;
    }
    return grad;
}

Vec Expression::d_velocity(double t, const Vec& q, const Vec& v) const {
    check_dims(*this, q, v);
    auto ctx = dual_context(t, q, v, dim_);
    Vec grad(dim_, 0.0);
    if (!with_velocity_) return grad;
    for (std::size_t i = 0; i < dim_; ++i) {
        ctx.v[i].dot = 1.0;
        grad[i] = detail::eval_node(*root_, ctx).dot;
        ctx.v[i].dot = 0.0;
    }
    return grad;
}

Expression Expression::dualized() const {
    return Expression(detail::transform_signs(root_, true, true), dim_,
                      with_velocity_);
}

Expression Expression::time_negated() const {
    return Expression(detail::transform_signs(root_, true, false), dim_,
                      with_velocity_);
}

Expression Expression::negated() const {
    return Expression(detail::make_neg(root_), dim_, with_velocity_);
}

std::string Expression::text() const {
    return detail::node_text(*root_, dim_);
}

bool Expression::identical(const Expression& other) const {
    return dim_ == other.dim_ && with_velocity_ == other.with_velocity_ &&
           detail::nodes_identical(*root_, *other.root_);
}

}  // namespace tsvar
