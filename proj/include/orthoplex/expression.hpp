#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace orthoplex {

/// Tiny expression grammar for user-supplied interaction functions of one
/// variable m: constants, m, + - * /, ^ with integer exponent, exp, ln, cos,
/// abs, parentheses.
struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    enum class Kind { Constant, Var, Add, Sub, Mul, Div, Pow, Exp, Ln, Cos, Abs };
    Kind kind;
    double value = 0.0;   // Constant
    long exponent = 0;    // Pow
    ExprPtr lhs, rhs;     // binary ops; unary functions use lhs
};

struct expr_parse_error : std::runtime_error {
    expr_parse_error(const std::string& message, std::size_t position)
        : std::runtime_error(message + " at position " + std::to_string(position)),
          position(position) {}
    std::size_t position;
};

/// Parses a formula; throws expr_parse_error with the offending position.
ExprPtr parse_expression(std::string_view text);

/// Canonical fully-parenthesized rendering; parse(print(ast)) reproduces the
/// tree exactly.
std::string print_expression(const ExprPtr& ast);

/// Evaluates at m; throws std::domain_error for ln of a non-positive value or
/// division by zero.
double eval_expression(const ExprPtr& ast, double m);

bool expr_equal(const ExprPtr& a, const ExprPtr& b);

}  // namespace orthoplex
