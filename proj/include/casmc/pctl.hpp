#pragma once

#include <memory>
#include <string>
#include <vector>

namespace casmc {

enum class CmpOp { LT, LE, GE, GT };

const char* to_string(CmpOp op);
bool compare(CmpOp op, double lhs, double rhs);

struct PctlPath;
struct PctlFormula;
using PctlFormulaPtr = std::shared_ptr<const PctlFormula>;
using PctlPathPtr = std::shared_ptr<const PctlPath>;

enum class PfKind { True, LocalAtom, OccPredicate, Not, And, Prob };

// Linear occupancy predicate, kept in normalized form: sum of named
// terms compared against a constant. State names are resolved against
// the model at check time.
struct OccTerm {
    std::string state;
    double coeff;
};

struct PctlFormula {
    PfKind kind;
    std::string atom;            // LocalAtom
    std::vector<OccTerm> terms;  // OccPredicate
    CmpOp cmp = CmpOp::GE;       // OccPredicate / Prob
    double bound = 0.0;          // OccPredicate rhs / Prob threshold
    PctlFormulaPtr lhs, rhs;     // Not uses lhs
    PctlPathPtr path;            // Prob

    static PctlFormulaPtr make_true();
    static PctlFormulaPtr local_atom(std::string state);
    static PctlFormulaPtr occ_predicate(std::vector<OccTerm> terms, CmpOp cmp, double bound);
    static PctlFormulaPtr negation(PctlFormulaPtr f);
    static PctlFormulaPtr conjunction(PctlFormulaPtr a, PctlFormulaPtr b);
    static PctlFormulaPtr prob(CmpOp cmp, double threshold, PctlPathPtr path);
};

struct PctlPath {
    bool is_next;            // Next(f1) when true, BoundedUntil(f1, k, f2) otherwise
    PctlFormulaPtr f1, f2;
    std::size_t bound = 0;   // k

    static PctlPathPtr next(PctlFormulaPtr f);
    static PctlPathPtr until(PctlFormulaPtr f1, std::size_t k, PctlFormulaPtr f2);
};

bool operator==(const PctlFormula& a, const PctlFormula& b);
inline bool operator!=(const PctlFormula& a, const PctlFormula& b) { return !(a == b); }
bool operator==(const PctlPath& a, const PctlPath& b);

// Surface syntax; parse(to_string(f)) reconstructs f exactly.
std::string to_string(const PctlFormula& f);
std::string to_string(const PctlPath& p);

// Maximum time index the formula can look at when evaluated at t = 0.
std::size_t pctl_horizon(const PctlFormula& f);
std::size_t pctl_horizon(const PctlPath& p);

// Number of Prob subformulas (syntactic occurrences).
std::size_t count_prob_subformulas(const PctlFormula& f);

}  // namespace casmc
