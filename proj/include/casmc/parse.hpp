#pragma once

#include <string>

#include "casmc/expr.hpp"
#include "casmc/formula.hpp"
#include "casmc/pctl.hpp"

namespace casmc {

// Spatial grammar, tightest first: !/N/somewhere/everywhere, &, |, ->,
// then infix S/P (right-associative). reach(f, g) is primary syntax.
// Temporal operators (EX/EU/AU and sugar) are rejected here with a
// located error.
FormulaPtr parse_spatial_formula(const std::string& text);

// Same grammar plus the temporal operators.
FormulaPtr parse_st_formula(const std::string& text);

// Bounded PCTL: state operators ! and &, local-state atoms, occupancy
// predicates (linear in m[...]), and P⋈p [ X f | f U<=k g ].
PctlFormulaPtr parse_pctl_formula(const std::string& text);

// Kernel arithmetic: constants, m[state], + - * /, min/max, parentheses.
ExprPtr parse_kernel_expr(const std::string& text);

}  // namespace casmc
