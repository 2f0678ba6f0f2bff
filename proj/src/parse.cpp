#include "casmc/parse.hpp"

#include <cctype>
#include <cstdlib>
#include <optional>
#include <vector>

#include "casmc/errors.hpp"

namespace casmc {

namespace {

enum class Tok {
    End,
    Ident,
    Number,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Bang,
    Amp,
    Pipe,
    Arrow,
    Plus,
    Minus,
    Star,
    Slash,
    Lt,
    Le,
    Gt,
    Ge,
};

struct Token {
    Tok kind;
    std::string text;    // Ident
    double number = 0;   // Number
    std::size_t line = 1, col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

    [[noreturn]] void fail(const std::string& msg) const { fail_at(tok_, msg); }

    [[noreturn]] void fail_at(const Token& t, const std::string& msg) const {
        throw ParseError(msg, t.line, t.col, current_line(t.line));
    }

    void expect(Tok kind, const char* what) {
        if (tok_.kind != kind) fail(std::string("expected ") + what);
        advance();
    }

private:
    std::string current_line(std::size_t line) const {
        std::size_t start = 0, cur = 1;
        while (cur < line) {
            std::size_t nl = text_.find('\n', start);
            if (nl == std::string::npos) return {};
            start = nl + 1;
            ++cur;
        }
        std::size_t end = text_.find('\n', start);
        return text_.substr(start, end == std::string::npos ? std::string::npos : end - start);
    }

    void advance() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '\n') {
                ++line_;
                col_ = 1;
                ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++col_;
                ++pos_;
            } else {
                break;
            }
        }
        tok_ = Token{Tok::End, "", 0, line_, col_};
        if (pos_ >= text_.size()) return;

        const char c = text_[pos_];
        auto single = [&](Tok k) {
            tok_.kind = k;
            ++pos_;
            ++col_;
        };
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            tok_.kind = Tok::Ident;
            tok_.text = text_.substr(start, pos_ - start);
            col_ += pos_ - start;
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
            const char* begin = text_.c_str() + pos_;
            char* end = nullptr;
            tok_.number = std::strtod(begin, &end);
            tok_.kind = Tok::Number;
            tok_.text = std::string(begin, static_cast<std::size_t>(end - begin));
            pos_ += end - begin;
            col_ += end - begin;
            return;
        }
        switch (c) {
            case '(': single(Tok::LParen); return;
            case ')': single(Tok::RParen); return;
            case '[': single(Tok::LBracket); return;
            case ']': single(Tok::RBracket); return;
            case ',': single(Tok::Comma); return;
            case '!': single(Tok::Bang); return;
            case '&': single(Tok::Amp); return;
            case '|': single(Tok::Pipe); return;
            case '+': single(Tok::Plus); return;
            case '*': single(Tok::Star); return;
            case '/': single(Tok::Slash); return;
            case '-':
                if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
                    tok_.kind = Tok::Arrow;
                    pos_ += 2;
                    col_ += 2;
                } else {
                    single(Tok::Minus);
                }
                return;
            case '<':
                if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
                    tok_.kind = Tok::Le;
                    pos_ += 2;
                    col_ += 2;
                } else {
                    single(Tok::Lt);
                }
                return;
            case '>':
                if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
                    tok_.kind = Tok::Ge;
                    pos_ += 2;
                    col_ += 2;
                } else {
                    single(Tok::Gt);
                }
                return;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", line_, col_,
                                 current_line(line_));
        }
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1, col_ = 1;
    Token tok_;
};

bool is_ident(const Token& t, const char* word) { return t.kind == Tok::Ident && t.text == word; }

// ---- spatial / spatio-temporal formulas ------------------------------

class FormulaParser {
public:
    FormulaParser(const std::string& text, bool allow_temporal)
        : lex_(text), allow_temporal_(allow_temporal) {}

    FormulaPtr parse() {
        FormulaPtr f = surround_level();
        if (lex_.peek().kind != Tok::End) lex_.fail("trailing input after formula");
        return f;
    }

private:
    // loosest: f S g | f P g, right-associative
    FormulaPtr surround_level() {
        FormulaPtr lhs = implies_level();
        const Token& t = lex_.peek();
        if (is_ident(t, "S")) {
            lex_.take();
            return f_surrounded(std::move(lhs), surround_level());
        }
        if (is_ident(t, "P")) {
            lex_.take();
            return f_propagate(std::move(lhs), surround_level());
        }
        return lhs;
    }

    FormulaPtr implies_level() {
        FormulaPtr lhs = or_level();
        if (lex_.peek().kind == Tok::Arrow) {
            lex_.take();
            return f_implies(std::move(lhs), implies_level());
        }
        return lhs;
    }

    FormulaPtr or_level() {
        FormulaPtr f = and_level();
        while (lex_.peek().kind == Tok::Pipe) {
            lex_.take();
            f = f_or(std::move(f), and_level());
        }
        return f;
    }

    FormulaPtr and_level() {
        FormulaPtr f = unary_level();
        while (lex_.peek().kind == Tok::Amp) {
            lex_.take();
            f = f_and(std::move(f), unary_level());
        }
        return f;
    }

    FormulaPtr unary_level() {
        const Token t = lex_.peek();
        if (t.kind == Tok::Bang) {
            lex_.take();
            return f_not(unary_level());
        }
        if (t.kind == Tok::Ident) {
            if (t.text == "N") {
                lex_.take();
                return f_near(unary_level());
            }
            if (t.text == "somewhere") {
                lex_.take();
                return f_somewhere(unary_level());
            }
            if (t.text == "everywhere") {
                lex_.take();
                return f_everywhere(unary_level());
            }
            if (t.text == "EX" || t.text == "EF" || t.text == "AF" || t.text == "EG" ||
                t.text == "AG") {
                require_temporal(t);
                lex_.take();
                FormulaPtr f = unary_level();
                if (t.text == "EX") return f_ex(std::move(f));
                if (t.text == "EF") return f_ef(std::move(f));
                if (t.text == "AF") return f_af(std::move(f));
                if (t.text == "EG") return f_eg(std::move(f));
                return f_ag(std::move(f));
            }
        }
        return primary();
    }

    FormulaPtr primary() {
        const Token t = lex_.peek();
        switch (t.kind) {
            case Tok::LParen: {
                lex_.take();
                FormulaPtr f = surround_level();
                lex_.expect(Tok::RParen, "')'");
                return f;
            }
            case Tok::Ident: {
                if (t.text == "true") {
                    lex_.take();
                    return f_true();
                }
                if (t.text == "false") {
                    lex_.take();
                    return f_not(f_true());
                }
                if (t.text == "reach") {
                    lex_.take();
                    auto [l, r] = pair_args();
                    return f_reach(std::move(l), std::move(r));
                }
                if (t.text == "EU" || t.text == "AU") {
                    require_temporal(t);
                    lex_.take();
                    auto [l, r] = pair_args();
                    return t.text == "EU" ? f_eu(std::move(l), std::move(r))
                                          : f_au(std::move(l), std::move(r));
                }
                if (reserved(t.text)) lex_.fail("operator '" + t.text + "' needs an operand");
                lex_.take();
                return f_atom(t.text);
            }
            default:
                lex_.fail("expected a formula");
        }
    }

    std::pair<FormulaPtr, FormulaPtr> pair_args() {
        lex_.expect(Tok::LParen, "'('");
        FormulaPtr l = surround_level();
        lex_.expect(Tok::Comma, "','");
        FormulaPtr r = surround_level();
        lex_.expect(Tok::RParen, "')'");
        return {std::move(l), std::move(r)};
    }

    void require_temporal(const Token& t) {
        if (!allow_temporal_)
            lex_.fail_at(t, "temporal operator '" + t.text + "' not allowed in a spatial formula");
    }

    static bool reserved(const std::string& w) {
        static const char* words[] = {"true", "false", "N", "S", "P", "somewhere", "everywhere",
                                      "reach", "EX", "EU", "AU", "EF", "AF", "EG", "AG"};
        for (const char* k : words)
            if (w == k) return true;
        return false;
    }

    Lexer lex_;
    bool allow_temporal_;
};

// ---- bounded PCTL -----------------------------------------------------

class PctlParser {
public:
    explicit PctlParser(const std::string& text) : lex_(text) {}

    PctlFormulaPtr parse() {
        PctlFormulaPtr f = and_level();
        if (lex_.peek().kind != Tok::End) lex_.fail("trailing input after formula");
        return f;
    }

private:
    PctlFormulaPtr and_level() {
        PctlFormulaPtr f = unary_level();
        while (lex_.peek().kind == Tok::Amp) {
            lex_.take();
            f = PctlFormula::conjunction(std::move(f), unary_level());
        }
        return f;
    }

    PctlFormulaPtr unary_level() {
        if (lex_.peek().kind == Tok::Bang) {
            lex_.take();
            return PctlFormula::negation(unary_level());
        }
        return primary();
    }

    PctlFormulaPtr primary() {
        const Token t = lex_.peek();
        if (t.kind == Tok::LParen) {
            lex_.take();
            PctlFormulaPtr f = and_level();
            lex_.expect(Tok::RParen, "')'");
            return f;
        }
        // Occupancy predicates start with a number, a sign or m[...].
        if (t.kind == Tok::Number || t.kind == Tok::Minus || t.kind == Tok::Plus ||
            is_ident(t, "m"))
            return occ_predicate();
        if (t.kind != Tok::Ident) lex_.fail("expected a state formula");
        if (t.text == "true") {
            lex_.take();
            return PctlFormula::make_true();
        }
        if (t.text == "false") {
            lex_.take();
            return PctlFormula::negation(PctlFormula::make_true());
        }
        if (t.text == "P") {
            lex_.take();
            CmpOp op = cmp_op();
            const Token bound = lex_.peek();
            if (bound.kind != Tok::Number) lex_.fail("expected a probability threshold");
            lex_.take();
            lex_.expect(Tok::LBracket, "'['");
            PctlPathPtr path = path_formula();
            lex_.expect(Tok::RBracket, "']'");
            if (bound.number < 0.0 || bound.number > 1.0)
                lex_.fail_at(bound, "probability threshold outside [0,1]");
            return PctlFormula::prob(op, bound.number, std::move(path));
        }
        if (t.text == "X" || t.text == "U")
            lex_.fail("path operator '" + t.text + "' outside P[...]");
        lex_.take();
        return PctlFormula::local_atom(t.text);
    }

    PctlPathPtr path_formula() {
        if (is_ident(lex_.peek(), "X")) {
            lex_.take();
            return PctlPath::next(and_level());
        }
        PctlFormulaPtr f1 = and_level();
        const Token u = lex_.peek();
        if (!is_ident(u, "U")) lex_.fail("expected 'U<=k' in until path formula");
        lex_.take();
        lex_.expect(Tok::Le, "'<='");
        const Token k = lex_.peek();
        if (k.kind != Tok::Number || k.number < 0 ||
            k.number != static_cast<double>(static_cast<std::size_t>(k.number)))
            lex_.fail("expected a non-negative integer bound");
        lex_.take();
        PctlFormulaPtr f2 = and_level();
        return PctlPath::until(std::move(f1), static_cast<std::size_t>(k.number), std::move(f2));
    }

    CmpOp cmp_op() {
        switch (lex_.peek().kind) {
            case Tok::Lt: lex_.take(); return CmpOp::LT;
            case Tok::Le: lex_.take(); return CmpOp::LE;
            case Tok::Ge: lex_.take(); return CmpOp::GE;
            case Tok::Gt: lex_.take(); return CmpOp::GT;
            default: lex_.fail("expected a comparison operator (< <= >= >)");
        }
    }

    struct LinExpr {
        std::vector<OccTerm> terms;
        double constant = 0.0;
    };

    // linexpr := ['-'] term (('+'|'-') term)* ; term := number ['*' m[x]] | m[x]
    LinExpr lin_expr() {
        LinExpr e;
        double sign = 1.0;
        if (lex_.peek().kind == Tok::Minus) {
            lex_.take();
            sign = -1.0;
        } else if (lex_.peek().kind == Tok::Plus) {
            lex_.take();
        }
        lin_term(e, sign);
        while (lex_.peek().kind == Tok::Plus || lex_.peek().kind == Tok::Minus) {
            sign = lex_.take().kind == Tok::Plus ? 1.0 : -1.0;
            lin_term(e, sign);
        }
        return e;
    }

    void lin_term(LinExpr& e, double sign) {
        const Token t = lex_.peek();
        if (t.kind == Tok::Number) {
            lex_.take();
            if (lex_.peek().kind == Tok::Star) {
                lex_.take();
                e.terms.push_back({m_ref(), sign * t.number});
            } else {
                e.constant += sign * t.number;
            }
            return;
        }
        if (is_ident(t, "m")) {
            e.terms.push_back({m_ref(), sign});
            return;
        }
        lex_.fail("expected a number or m[state]");
    }

    std::string m_ref() {
        const Token m = lex_.peek();
        if (!is_ident(m, "m")) lex_.fail("expected m[state]");
        lex_.take();
        lex_.expect(Tok::LBracket, "'['");
        const Token name = lex_.peek();
        if (name.kind != Tok::Ident) lex_.fail("expected a state name");
        lex_.take();
        lex_.expect(Tok::RBracket, "']'");
        return name.text;
    }

    PctlFormulaPtr occ_predicate() {
        const Token at = lex_.peek();
        LinExpr lhs = lin_expr();
        CmpOp op = cmp_op();
        LinExpr rhs = lin_expr();
        std::vector<OccTerm> terms = std::move(lhs.terms);
        for (const auto& t : rhs.terms) terms.push_back({t.state, -t.coeff});
        if (terms.empty())
            lex_.fail_at(at, "occupancy predicate must mention m[state]");
        return PctlFormula::occ_predicate(std::move(terms), op, rhs.constant - lhs.constant);
    }

    Lexer lex_;
};

// ---- kernel expressions ------------------------------------------------

class ExprParser {
public:
    explicit ExprParser(const std::string& text) : lex_(text) {}

    ExprPtr parse() {
        ExprPtr e = sum();
        if (lex_.peek().kind != Tok::End) lex_.fail("trailing input after expression");
        return e;
    }

private:
    ExprPtr sum() {
        ExprPtr e = product();
        while (true) {
            const Tok k = lex_.peek().kind;
            if (k == Tok::Plus || k == Tok::Minus) {
                lex_.take();
                e = Expr::binary(k == Tok::Plus ? EKind::Add : EKind::Sub, std::move(e), product());
            } else {
                return e;
            }
        }
    }

    ExprPtr product() {
        ExprPtr e = factor();
        while (true) {
            const Tok k = lex_.peek().kind;
            if (k == Tok::Star || k == Tok::Slash) {
                lex_.take();
                e = Expr::binary(k == Tok::Star ? EKind::Mul : EKind::Div, std::move(e), factor());
            } else {
                return e;
            }
        }
    }

    ExprPtr factor() {
        const Token t = lex_.peek();
        if (t.kind == Tok::Minus) {
            lex_.take();
            return Expr::unary(EKind::Neg, factor());
        }
        if (t.kind == Tok::Number) {
            lex_.take();
            return Expr::constant(t.number);
        }
        if (t.kind == Tok::LParen) {
            lex_.take();
            ExprPtr e = sum();
            lex_.expect(Tok::RParen, "')'");
            return e;
        }
        if (is_ident(t, "m")) {
            lex_.take();
            lex_.expect(Tok::LBracket, "'['");
            const Token name = lex_.peek();
            if (name.kind != Tok::Ident) lex_.fail("expected a state name");
            lex_.take();
            lex_.expect(Tok::RBracket, "']'");
            return Expr::var_ref(name.text);
        }
        if (is_ident(t, "min") || is_ident(t, "max")) {
            lex_.take();
            lex_.expect(Tok::LParen, "'('");
            ExprPtr l = sum();
            lex_.expect(Tok::Comma, "','");
            ExprPtr r = sum();
            lex_.expect(Tok::RParen, "')'");
            return Expr::binary(t.text == "min" ? EKind::Min : EKind::Max, std::move(l),
                                std::move(r));
        }
        lex_.fail("expected a number, m[state], min/max or '('");
    }

    Lexer lex_;
};

}  // namespace

FormulaPtr parse_spatial_formula(const std::string& text) {
    return FormulaParser(text, false).parse();
}

FormulaPtr parse_st_formula(const std::string& text) {
    return FormulaParser(text, true).parse();
}

PctlFormulaPtr parse_pctl_formula(const std::string& text) { return PctlParser(text).parse(); }

ExprPtr parse_kernel_expr(const std::string& text) { return ExprParser(text).parse(); }

}  // namespace casmc
