#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "geomhh/errors.hpp"
#include "geomhh/interval.hpp"

namespace geomhh::expr {

enum class NodeKind {
    Number,    // literal
    Variable,  // the single variable x
    Parameter, // named constant bound at evaluation time
    Negate,
    Add,
    Sub,
    Mul,
    Div,
    Pow,
    Ln,
    Exp,
    Sqrt,
    Abs,
};

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

// Immutable expression tree. Binary nodes use lhs/rhs, unary nodes lhs only.
struct ExprNode {
    NodeKind kind;
    double value = 0.0; // Number payload
    std::string name;   // Parameter payload
    ExprPtr lhs;
    ExprPtr rhs;
};

using Bindings = std::map<std::string, double>;

// Grammar (EBNF):
//   expr    := term (("+"|"-") term)*
//   term    := factor (("*"|"/") factor)*
//   factor  := unary ("^" factor)?
//   unary   := "-" unary | primary
//   primary := NUMBER | "x" | IDENT "(" expr ")" | IDENT | "(" expr ")"
// Throws ParseError with a character offset on malformed input.
ExprPtr parse(std::string_view source);

// IEEE double evaluation; deterministic for fixed input. Throws DomainError
// on ln/sqrt of a negative, division by zero or an unbound parameter.
double evaluate(const ExprNode& e, double x, const Bindings& bindings);

// Symbolic d/dx. Powers with an x-dependent exponent are differentiated
// through the exp(g*ln f) rewrite; abs contributes u/|u| (errors at u=0).
ExprPtr differentiate(const ExprPtr& e);

// Canonical serializer; parse(to_string(t)) is structurally equal to t.
std::string to_string(const ExprNode& e);

bool structurally_equal(const ExprNode& a, const ExprNode& b);
bool contains_variable(const ExprNode& e);

// Node constructors used by the differentiator and tests. They fold
// constant-only applications whose result is finite.
ExprPtr make_number(double v);
ExprPtr make_variable();
ExprPtr make_parameter(std::string name);
ExprPtr make_unary(NodeKind kind, ExprPtr child);
ExprPtr make_binary(NodeKind kind, ExprPtr lhs, ExprPtr rhs);

// A positive function on an interval together with its derivative.
// The derivative defaults to the symbolic derivative of the value
// expression and can be overridden with a user-supplied expression.
class FunctionHandle {
public:
    FunctionHandle(std::string_view source, Bindings bindings, Interval domain);
    FunctionHandle(std::string_view source, std::string_view derivative_source,
                   Bindings bindings, Interval domain);
    // Pre-parsed trees, for sweeps that bind new parameter values per grid
    // point without re-parsing.
    FunctionHandle(ExprPtr value_expr, ExprPtr derivative_expr, Bindings bindings,
                   Interval domain);

    double value(double x) const;
    double derivative(double x) const;

    // value() plus a strict positivity check, for the geometric-convexity
    // paths where f must map into (0, inf).
    double positive_value(double x) const;

    const Interval& domain() const { return domain_; }
    const Bindings& bindings() const { return bindings_; }
    const ExprPtr& value_expr() const { return value_; }
    const ExprPtr& derivative_expr() const { return derivative_; }
    const std::string& source() const { return source_; }

private:
    std::string source_;
    ExprPtr value_;
    ExprPtr derivative_;
    Bindings bindings_;
    Interval domain_;
};

} // namespace geomhh::expr
