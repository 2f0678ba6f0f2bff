#pragma once

#include <memory>
#include <span>
#include <string>

namespace casmc {

// Arithmetic over the occupancy measure, used for kernel entries:
// constants, m[state], + - * /, min/max.
enum class EKind { Const, Var, Add, Sub, Mul, Div, Min, Max, Neg };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    EKind kind;
    double value = 0.0;      // Const
    std::string var;         // Var: state name
    int var_index = -1;      // resolved against a model's state list
    ExprPtr lhs, rhs;

    static ExprPtr constant(double v);
    static ExprPtr var_ref(std::string state);
    static ExprPtr unary(EKind k, ExprPtr e);
    static ExprPtr binary(EKind k, ExprPtr l, ExprPtr r);
};

// Copy of `e` with every m[state] reference resolved to an index into
// `states`; unknown names raise ModelError.
ExprPtr resolve(const ExprPtr& e, std::span<const std::string> states);

// Evaluate a resolved expression; division by zero raises ModelError.
double eval(const Expr& e, std::span<const double> measure);

std::string to_string(const Expr& e);

}  // namespace casmc
