#include "casmc/pctl.hpp"

#include <algorithm>
#include <cmath>

#include "casmc/errors.hpp"
#include "numfmt.hpp"

namespace casmc {

const char* to_string(CmpOp op) {
    switch (op) {
        case CmpOp::LT: return "<";
        case CmpOp::LE: return "<=";
        case CmpOp::GE: return ">=";
        case CmpOp::GT: return ">";
    }
    throw InternalError("unknown comparison operator");
}

bool compare(CmpOp op, double lhs, double rhs) {
    switch (op) {
        case CmpOp::LT: return lhs < rhs;
        case CmpOp::LE: return lhs <= rhs;
        case CmpOp::GE: return lhs >= rhs;
        case CmpOp::GT: return lhs > rhs;
    }
    throw InternalError("unknown comparison operator");
}

PctlFormulaPtr PctlFormula::make_true() {
    return std::make_shared<PctlFormula>(PctlFormula{PfKind::True, "", {}, CmpOp::GE, 0.0,
                                                     nullptr, nullptr, nullptr});
}

PctlFormulaPtr PctlFormula::local_atom(std::string state) {
    return std::make_shared<PctlFormula>(PctlFormula{PfKind::LocalAtom, std::move(state), {}, CmpOp::GE,
                                                     0.0, nullptr, nullptr, nullptr});
}

PctlFormulaPtr PctlFormula::occ_predicate(std::vector<OccTerm> terms, CmpOp cmp, double bound) {
    return std::make_shared<PctlFormula>(PctlFormula{PfKind::OccPredicate, "", std::move(terms), cmp,
                                                     bound, nullptr, nullptr, nullptr});
}

PctlFormulaPtr PctlFormula::negation(PctlFormulaPtr f) {
    return std::make_shared<PctlFormula>(PctlFormula{PfKind::Not, "", {}, CmpOp::GE, 0.0,
                                                     std::move(f), nullptr, nullptr});
}

PctlFormulaPtr PctlFormula::conjunction(PctlFormulaPtr a, PctlFormulaPtr b) {
    return std::make_shared<PctlFormula>(PctlFormula{PfKind::And, "", {}, CmpOp::GE, 0.0,
                                                     std::move(a), std::move(b), nullptr});
}

PctlFormulaPtr PctlFormula::prob(CmpOp cmp, double threshold, PctlPathPtr path) {
    if (threshold < 0.0 || threshold > 1.0)
        throw FormulaError("probability threshold " + num_to_string(threshold) + " outside [0,1]");
    return std::make_shared<PctlFormula>(PctlFormula{PfKind::Prob, "", {}, cmp, threshold,
                                                     nullptr, nullptr, std::move(path)});
}

PctlPathPtr PctlPath::next(PctlFormulaPtr f) {
    return std::make_shared<PctlPath>(PctlPath{true, std::move(f), nullptr, 0});
}

PctlPathPtr PctlPath::until(PctlFormulaPtr f1, std::size_t k, PctlFormulaPtr f2) {
    return std::make_shared<PctlPath>(PctlPath{false, std::move(f1), std::move(f2), k});
}

bool operator==(const PctlPath& a, const PctlPath& b) {
    if (a.is_next != b.is_next || a.bound != b.bound) return false;
    auto eq = [](const PctlFormulaPtr& x, const PctlFormulaPtr& y) {
        if (!x || !y) return !x && !y;
        return *x == *y;
    };
    return eq(a.f1, b.f1) && eq(a.f2, b.f2);
}

bool operator==(const PctlFormula& a, const PctlFormula& b) {
    if (a.kind != b.kind) return false;
    if (a.atom != b.atom || a.cmp != b.cmp || a.bound != b.bound) return false;
    if (a.terms.size() != b.terms.size()) return false;
    for (std::size_t i = 0; i < a.terms.size(); ++i)
        if (a.terms[i].state != b.terms[i].state || a.terms[i].coeff != b.terms[i].coeff) return false;
    auto eq = [](const PctlFormulaPtr& x, const PctlFormulaPtr& y) {
        if (!x || !y) return !x && !y;
        return *x == *y;
    };
    if (!eq(a.lhs, b.lhs) || !eq(a.rhs, b.rhs)) return false;
    if (!a.path != !b.path) return false;
    return !a.path || *a.path == *b.path;
}

namespace {

// Binding strength: & < ! < primary.
int pf_prec(PfKind k) {
    switch (k) {
        case PfKind::And: return 1;
        case PfKind::Not: return 2;
        default: return 3;
    }
}

void print(const PctlFormula& f, int required, std::string& out) {
    const int prec = pf_prec(f.kind);
    const bool parens = prec < required;
    if (parens) out += '(';
    switch (f.kind) {
        case PfKind::True: out += "true"; break;
        case PfKind::LocalAtom: out += f.atom; break;
        case PfKind::Not:
            out += '!';
            print(*f.lhs, 2, out);
            break;
        case PfKind::And:
            print(*f.lhs, 1, out);
            out += " & ";
            print(*f.rhs, 2, out);
            break;
        case PfKind::OccPredicate: {
            for (std::size_t i = 0; i < f.terms.size(); ++i) {
                const auto& t = f.terms[i];
                double c = t.coeff;
                if (i == 0) {
                    if (c < 0) out += '-';
                } else {
                    out += c < 0 ? " - " : " + ";
                }
                double mag = std::fabs(c);
                if (mag != 1.0) {
                    out += num_to_string(mag);
                    out += '*';
                }
                out += "m[" + t.state + "]";
            }
            out += ' ';
            out += to_string(f.cmp);
            out += ' ';
            out += num_to_string(f.bound);
            break;
        }
        case PfKind::Prob:
            out += 'P';
            out += to_string(f.cmp);
            out += num_to_string(f.bound);
            out += " [";
            out += to_string(*f.path);
            out += ']';
            break;
    }
    if (parens) out += ')';
}

}  // namespace

std::string to_string(const PctlPath& p) {
    std::string out;
    if (p.is_next) {
        out += "X ";
        print(*p.f1, 2, out);
    } else {
        print(*p.f1, 2, out);
        out += " U<=";
        out += std::to_string(p.bound);
        out += ' ';
        print(*p.f2, 2, out);
    }
    return out;
}

std::string to_string(const PctlFormula& f) {
    std::string out;
    print(f, 0, out);
    return out;
}

std::size_t pctl_horizon(const PctlPath& p) {
    if (p.is_next) return 1 + pctl_horizon(*p.f1);
    return p.bound + std::max(pctl_horizon(*p.f1), pctl_horizon(*p.f2));
}

std::size_t pctl_horizon(const PctlFormula& f) {
    switch (f.kind) {
        case PfKind::True:
        case PfKind::LocalAtom:
        case PfKind::OccPredicate: return 0;
        case PfKind::Not: return pctl_horizon(*f.lhs);
        case PfKind::And: return std::max(pctl_horizon(*f.lhs), pctl_horizon(*f.rhs));
        case PfKind::Prob: return pctl_horizon(*f.path);
    }
    throw InternalError("unknown pctl formula kind");
}

std::size_t count_prob_subformulas(const PctlFormula& f) {
    switch (f.kind) {
        case PfKind::True:
        case PfKind::LocalAtom:
        case PfKind::OccPredicate: return 0;
        case PfKind::Not: return count_prob_subformulas(*f.lhs);
        case PfKind::And: return count_prob_subformulas(*f.lhs) + count_prob_subformulas(*f.rhs);
        case PfKind::Prob: {
            std::size_t n = 1 + count_prob_subformulas(*f.path->f1);
            if (f.path->f2) n += count_prob_subformulas(*f.path->f2);
            return n;
        }
    }
    throw InternalError("unknown pctl formula kind");
}

}  // namespace casmc
