#include "casmc/formula.hpp"

#include "casmc/errors.hpp"

namespace casmc {

FormulaPtr Formula::make_true() {
    return std::make_shared<Formula>(Formula{FKind::True, "", nullptr, nullptr});
}

FormulaPtr Formula::make_atom(std::string name) {
    return std::make_shared<Formula>(Formula{FKind::Atom, std::move(name), nullptr, nullptr});
}

FormulaPtr Formula::unary(FKind k, FormulaPtr f) {
    return std::make_shared<Formula>(Formula{k, "", std::move(f), nullptr});
}

FormulaPtr Formula::binary(FKind k, FormulaPtr l, FormulaPtr r) {
    return std::make_shared<Formula>(Formula{k, "", std::move(l), std::move(r)});
}

bool operator==(const Formula& a, const Formula& b) {
    if (a.kind != b.kind || a.atom != b.atom) return false;
    auto eq = [](const FormulaPtr& x, const FormulaPtr& y) {
        if (!x || !y) return !x && !y;
        return *x == *y;
    };
    return eq(a.lhs, b.lhs) && eq(a.rhs, b.rhs);
}

namespace {

// Binding strength, loosest first: S/P < -> < | < & < unary < primary.
int precedence(FKind k) {
    switch (k) {
        case FKind::Surrounded:
        case FKind::Propagate: return 0;
        case FKind::Implies: return 1;
        case FKind::Or: return 2;
        case FKind::And: return 3;
        case FKind::Not:
        case FKind::Near:
        case FKind::Somewhere:
        case FKind::Everywhere:
        case FKind::EX:
        case FKind::EF:
        case FKind::AF:
        case FKind::EG:
        case FKind::AG: return 4;
        default: return 5;
    }
}

void print(const Formula& f, int required, std::string& out) {
    const int prec = precedence(f.kind);
    const bool parens = prec < required;
    if (parens) out += '(';
    switch (f.kind) {
        case FKind::True: out += "true"; break;
        case FKind::Atom: out += f.atom; break;
        case FKind::Not:
            out += '!';
            print(*f.lhs, 4, out);
            break;
        case FKind::Near:
            out += "N ";
            print(*f.lhs, 4, out);
            break;
        case FKind::Somewhere:
            out += "somewhere ";
            print(*f.lhs, 4, out);
            break;
        case FKind::Everywhere:
            out += "everywhere ";
            print(*f.lhs, 4, out);
            break;
        case FKind::EX:
        case FKind::EF:
        case FKind::AF:
        case FKind::EG:
        case FKind::AG: {
            const char* op = f.kind == FKind::EX   ? "EX "
                             : f.kind == FKind::EF ? "EF "
                             : f.kind == FKind::AF ? "AF "
                             : f.kind == FKind::EG ? "EG "
                                                   : "AG ";
            out += op;
            print(*f.lhs, 4, out);
            break;
        }
        case FKind::And:
            print(*f.lhs, 3, out);
            out += " & ";
            print(*f.rhs, 4, out);
            break;
        case FKind::Or:
            print(*f.lhs, 2, out);
            out += " | ";
            print(*f.rhs, 3, out);
            break;
        case FKind::Implies:
            print(*f.lhs, 2, out);
            out += " -> ";
            print(*f.rhs, 1, out);
            break;
        case FKind::Surrounded:
            print(*f.lhs, 1, out);
            out += " S ";
            print(*f.rhs, 0, out);
            break;
        case FKind::Propagate:
            print(*f.lhs, 1, out);
            out += " P ";
            print(*f.rhs, 0, out);
            break;
        case FKind::Reach:
            out += "reach(";
            print(*f.lhs, 0, out);
            out += ", ";
            print(*f.rhs, 0, out);
            out += ')';
            break;
        case FKind::EU:
        case FKind::AU:
            out += f.kind == FKind::EU ? "EU(" : "AU(";
            print(*f.lhs, 0, out);
            out += ", ";
            print(*f.rhs, 0, out);
            out += ')';
            break;
    }
    if (parens) out += ')';
}

}  // namespace

std::string to_string(const Formula& f) {
    std::string out;
    print(f, 0, out);
    return out;
}

bool is_spatial(const Formula& f) {
    switch (f.kind) {
        case FKind::EX:
        case FKind::EU:
        case FKind::AU:
        case FKind::EF:
        case FKind::AF:
        case FKind::EG:
        case FKind::AG: return false;
        default: break;
    }
    if (f.lhs && !is_spatial(*f.lhs)) return false;
    if (f.rhs && !is_spatial(*f.rhs)) return false;
    return true;
}

FormulaPtr desugar(const FormulaPtr& f) {
    if (!f) throw InternalError("desugar of null formula");
    switch (f->kind) {
        case FKind::True:
        case FKind::Atom: return f;
        case FKind::Or: return f_not(f_and(f_not(desugar(f->lhs)), f_not(desugar(f->rhs))));
        case FKind::Implies: return f_not(f_and(desugar(f->lhs), f_not(desugar(f->rhs))));
        case FKind::Somewhere: return f_reach(f_true(), desugar(f->lhs));
        case FKind::Everywhere: return f_not(f_reach(f_true(), f_not(desugar(f->lhs))));
        case FKind::EF: return f_eu(f_true(), desugar(f->lhs));
        case FKind::AF: return f_au(f_true(), desugar(f->lhs));
        case FKind::EG: return f_not(f_au(f_true(), f_not(desugar(f->lhs))));
        case FKind::AG: return f_not(f_eu(f_true(), f_not(desugar(f->lhs))));
        default: {
            FormulaPtr l = f->lhs ? desugar(f->lhs) : nullptr;
            FormulaPtr r = f->rhs ? desugar(f->rhs) : nullptr;
            if (l == f->lhs && r == f->rhs) return f;
            auto out = std::make_shared<Formula>(*f);
            out->lhs = std::move(l);
            out->rhs = std::move(r);
            return out;
        }
    }
}

}  // namespace casmc
