#pragma once

#include <memory>
#include <string>

namespace casmc {

// One AST covers both the spatial core and the temporal extension; the
// purely spatial engine rejects temporal nodes at evaluation time.
enum class FKind {
    True,
    Atom,
    Not,
    And,
    Or,          // sugar
    Implies,     // sugar
    Near,        // N f
    Surrounded,  // f S g
    Propagate,   // f P g (experimental)
    Somewhere,   // sugar for Reach(true, f)
    Everywhere,  // sugar for !Somewhere(!f)
    Reach,       // reach(f, g)
    EX,
    EU,
    AU,
    EF,  // sugar for EU(true, f)
    AF,  // sugar for AU(true, f)
    EG,  // sugar for !AF(!f)
    AG,  // sugar for !EF(!f)
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
    FKind kind;
    std::string atom;       // Atom only
    FormulaPtr lhs, rhs;    // unary ops use lhs

    static FormulaPtr make_true();
    static FormulaPtr make_atom(std::string name);
    static FormulaPtr unary(FKind k, FormulaPtr f);
    static FormulaPtr binary(FKind k, FormulaPtr l, FormulaPtr r);
};

bool operator==(const Formula& a, const Formula& b);
inline bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

// Convenience constructors.
inline FormulaPtr f_true() { return Formula::make_true(); }
inline FormulaPtr f_atom(std::string n) { return Formula::make_atom(std::move(n)); }
inline FormulaPtr f_not(FormulaPtr f) { return Formula::unary(FKind::Not, std::move(f)); }
inline FormulaPtr f_and(FormulaPtr a, FormulaPtr b) { return Formula::binary(FKind::And, std::move(a), std::move(b)); }
inline FormulaPtr f_or(FormulaPtr a, FormulaPtr b) { return Formula::binary(FKind::Or, std::move(a), std::move(b)); }
inline FormulaPtr f_implies(FormulaPtr a, FormulaPtr b) { return Formula::binary(FKind::Implies, std::move(a), std::move(b)); }
inline FormulaPtr f_near(FormulaPtr f) { return Formula::unary(FKind::Near, std::move(f)); }
inline FormulaPtr f_surrounded(FormulaPtr a, FormulaPtr b) { return Formula::binary(FKind::Surrounded, std::move(a), std::move(b)); }
inline FormulaPtr f_propagate(FormulaPtr a, FormulaPtr b) { return Formula::binary(FKind::Propagate, std::move(a), std::move(b)); }
inline FormulaPtr f_somewhere(FormulaPtr f) { return Formula::unary(FKind::Somewhere, std::move(f)); }
inline FormulaPtr f_everywhere(FormulaPtr f) { return Formula::unary(FKind::Everywhere, std::move(f)); }
inline FormulaPtr f_reach(FormulaPtr a, FormulaPtr b) { return Formula::binary(FKind::Reach, std::move(a), std::move(b)); }
inline FormulaPtr f_ex(FormulaPtr f) { return Formula::unary(FKind::EX, std::move(f)); }
inline FormulaPtr f_eu(FormulaPtr a, FormulaPtr b) { return Formula::binary(FKind::EU, std::move(a), std::move(b)); }
inline FormulaPtr f_au(FormulaPtr a, FormulaPtr b) { return Formula::binary(FKind::AU, std::move(a), std::move(b)); }
inline FormulaPtr f_ef(FormulaPtr f) { return Formula::unary(FKind::EF, std::move(f)); }
inline FormulaPtr f_af(FormulaPtr f) { return Formula::unary(FKind::AF, std::move(f)); }
inline FormulaPtr f_eg(FormulaPtr f) { return Formula::unary(FKind::EG, std::move(f)); }
inline FormulaPtr f_ag(FormulaPtr f) { return Formula::unary(FKind::AG, std::move(f)); }

// Surface-syntax rendering with minimal parentheses; parse(to_string(f))
// reconstructs f exactly.
std::string to_string(const Formula& f);
inline std::string to_string(const FormulaPtr& f) { return to_string(*f); }

// True when the formula uses no temporal operators.
bool is_spatial(const Formula& f);

// Rewrites Or/Implies via !,& ; Somewhere/Everywhere via reach; and the
// temporal sugar EF/AF/EG/AG via EU/AU. Core operators pass through.
FormulaPtr desugar(const FormulaPtr& f);

}  // namespace casmc
