#include "casmc/expr.hpp"

#include <algorithm>
#include <cmath>

#include "casmc/errors.hpp"
#include "numfmt.hpp"

namespace casmc {

ExprPtr Expr::constant(double v) {
    return std::make_shared<Expr>(Expr{EKind::Const, v, "", -1, nullptr, nullptr});
}

ExprPtr Expr::var_ref(std::string state) {
    return std::make_shared<Expr>(Expr{EKind::Var, 0.0, std::move(state), -1, nullptr, nullptr});
}

ExprPtr Expr::unary(EKind k, ExprPtr e) {
    return std::make_shared<Expr>(Expr{k, 0.0, "", -1, std::move(e), nullptr});
}

ExprPtr Expr::binary(EKind k, ExprPtr l, ExprPtr r) {
    return std::make_shared<Expr>(Expr{k, 0.0, "", -1, std::move(l), std::move(r)});
}

ExprPtr resolve(const ExprPtr& e, std::span<const std::string> states) {
    if (!e) return nullptr;
    auto out = std::make_shared<Expr>(*e);
    if (e->kind == EKind::Var) {
        auto it = std::find(states.begin(), states.end(), e->var);
        if (it == states.end())
            throw ModelError("expression references undeclared state '" + e->var + "'");
        out->var_index = static_cast<int>(it - states.begin());
    }
    out->lhs = resolve(e->lhs, states);
    out->rhs = resolve(e->rhs, states);
    return out;
}

double eval(const Expr& e, std::span<const double> measure) {
    switch (e.kind) {
        case EKind::Const: return e.value;
        case EKind::Var:
            if (e.var_index < 0 || static_cast<std::size_t>(e.var_index) >= measure.size())
                throw InternalError("unresolved state reference m[" + e.var + "]");
            return measure[e.var_index];
        case EKind::Neg: return -eval(*e.lhs, measure);
        case EKind::Add: return eval(*e.lhs, measure) + eval(*e.rhs, measure);
        case EKind::Sub: return eval(*e.lhs, measure) - eval(*e.rhs, measure);
        case EKind::Mul: return eval(*e.lhs, measure) * eval(*e.rhs, measure);
        case EKind::Div: {
            double d = eval(*e.rhs, measure);
            if (d == 0.0)
                throw ModelError("division by zero in kernel expression " + to_string(e));
            return eval(*e.lhs, measure) / d;
        }
        case EKind::Min: return std::min(eval(*e.lhs, measure), eval(*e.rhs, measure));
        case EKind::Max: return std::max(eval(*e.lhs, measure), eval(*e.rhs, measure));
    }
    throw InternalError("unknown expression kind");
}

namespace {

int expr_prec(EKind k) {
    switch (k) {
        case EKind::Add:
        case EKind::Sub: return 1;
        case EKind::Mul:
        case EKind::Div: return 2;
        case EKind::Neg: return 3;
        default: return 4;
    }
}

void print(const Expr& e, int required, std::string& out) {
    const int prec = expr_prec(e.kind);
    const bool parens = prec < required;
    if (parens) out += '(';
    switch (e.kind) {
        case EKind::Const: out += num_to_string(e.value); break;
        case EKind::Var: out += "m[" + e.var + "]"; break;
        case EKind::Neg:
            out += '-';
            print(*e.lhs, 3, out);
            break;
        case EKind::Add:
        case EKind::Sub:
            print(*e.lhs, 1, out);
            out += e.kind == EKind::Add ? " + " : " - ";
            print(*e.rhs, 2, out);
            break;
        case EKind::Mul:
        case EKind::Div:
            print(*e.lhs, 2, out);
            out += e.kind == EKind::Mul ? " * " : " / ";
            print(*e.rhs, 3, out);
            break;
        case EKind::Min:
        case EKind::Max:
            out += e.kind == EKind::Min ? "min(" : "max(";
            print(*e.lhs, 0, out);
            out += ", ";
            print(*e.rhs, 0, out);
            out += ')';
            break;
    }
    if (parens) out += ')';
}

}  // namespace

std::string to_string(const Expr& e) {
    std::string out;
    print(e, 0, out);
    return out;
}

}  // namespace casmc
