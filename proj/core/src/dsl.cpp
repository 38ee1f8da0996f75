#include "tracktor/dsl.hpp"

#include "tracktor/tractor.hpp"

#include <cctype>
#include <map>

namespace tracktor {

namespace {

struct Lexer {
    const std::string& src;
    size_t pos = 0, line = 1, col = 1;

    explicit Lexer(const std::string& s) : src(s) { skip_ws(); }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line, col); }

    void advance() {
        if (pos < src.size()) {
            if (src[pos] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++pos;
        }
    }
    void skip_ws() {
        while (pos < src.size()) {
            char c = src[pos];
            if (c == '#') {  // comment to end of line
                while (pos < src.size() && src[pos] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }
    bool eof() const { return pos >= src.size(); }
    char peek() const { return pos < src.size() ? src[pos] : '\0'; }
    bool accept(char c) {
        if (peek() == c) {
            advance();
            skip_ws();
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    bool accept_word(const std::string& w) {
        size_t save = pos, sl = line, sc = col;
        for (char c : w) {
            if (peek() != c) {
                pos = save;
                line = sl;
                col = sc;
                return false;
            }
            advance();
        }
        if (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
            pos = save;
            line = sl;
            col = sc;
            return false;
        }
        skip_ws();
        return true;
    }
    std::string ident() {
        if (!std::isalpha(static_cast<unsigned char>(peek())) && peek() != '_')
            fail("expected identifier");
        std::string s;
        while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
            s += peek();
            advance();
        }
        skip_ws();
        return s;
    }
    long long integer() {
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected number");
        long long v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (peek() - '0');
            advance();
        }
        skip_ws();
        return v;
    }
};

const std::map<std::string, int>& builtin_atoms() {
    static const std::map<std::string, int> m = {
        {"g", kind::Metric},   {"h", kind::TracMetric}, {"P", kind::Schouten},
        {"J", kind::JScalar},  {"C", kind::Weyl},       {"R", kind::Riemann},
        {"X", kind::X},        {"Y", kind::Y},          {"Z", kind::Z},
        {"W", kind::W},        {"OmT", kind::OmegaTr},  {"Om", kind::OmegaMx},
    };
    return m;
}

struct Parser {
    Lexer lex;
    explicit Parser(const std::string& s) : lex(s) {}

    // --- coefficients: rational expressions in n -----------------------------
    DimRational coeff_expr() {
        DimRational v = coeff_term();
        for (;;) {
            if (lex.accept('+')) v = v + coeff_term();
            else if (lex.accept('-')) v = v - coeff_term();
            else return v;
        }
    }
    DimRational coeff_term() {
        DimRational v = coeff_factor();
        for (;;) {
            if (lex.accept('*')) v = v * coeff_factor();
            else if (lex.accept('/')) {
                DimRational d = coeff_factor();
                if (d.is_zero()) lex.fail("division by zero in coefficient");
                v = v / d;
            } else
                return v;
        }
    }
    DimRational coeff_factor() {
        DimRational v = coeff_primary();
        while (lex.accept('^')) {
            long long p = lex.integer();
            DimRational r(1);
            for (long long i = 0; i < p; ++i) r = r * v;
            v = r;
        }
        return v;
    }
    DimRational coeff_primary() {
        if (lex.accept('-')) return -coeff_primary();
        if (lex.accept('+')) return coeff_primary();
        if (lex.accept('(')) {
            DimRational v = coeff_expr();
            lex.expect(')');
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(lex.peek())))
            return DimRational(lex.integer());
        if (lex.accept_word("n")) return DimRational::n();
        lex.fail("expected coefficient");
    }

    // --- indices -------------------------------------------------------------
    Index index() {
        bool up = false;
        if (lex.accept('+')) up = true;
        else lex.accept('-');  // down is the default
        std::string name = lex.ident();
        IndexKind k = std::isupper(static_cast<unsigned char>(name[0])) ? IndexKind::Tractor
                                                                        : IndexKind::Tensor;
        return Index{intern_label(name), k, up};
    }
    std::vector<Index> index_list() {
        lex.expect('[');
        std::vector<Index> out;
        if (!lex.accept(']')) {
            do {
                out.push_back(index());
            } while (lex.accept(','));
            lex.expect(']');
        }
        return out;
    }

    // --- expressions ---------------------------------------------------------
    Expr expr() {
        Expr v = term();
        for (;;) {
            if (lex.accept('+')) v = v + term();
            else if (lex.accept('-')) v = v - term();
            else return v;
        }
    }
    Expr term() {
        Expr v = factor();
        for (;;) {
            if (lex.accept('*')) {
                // a factor still carrying operator nodes (unexpandable macro)
                // would silently absorb later factors into its scope
                size_t line = lex.line, col = lex.col;
                if (!fully_expanded(v))
                    throw ParseError(
                        "a factor containing operator nodes must be the last "
                        "factor of its term",
                        line, col);
                v = multiply(v, factor());
            } else if (lex.accept('/')) {
                size_t line = lex.line, col = lex.col;
                Expr d = factor();
                if (d.terms.size() != 1 || !d.terms[0].body.empty())
                    throw ParseError("divisor must be a scalar coefficient", line, col);
                if (d.terms[0].coeff.is_zero())
                    throw ParseError("division by zero", line, col);
                v = (DimRational(1) / d.terms[0].coeff) * v;
            } else {
                return v;
            }
        }
    }
    Expr factor() {
        Expr v = primary();
        while (lex.accept('^')) {
            long long p = lex.integer();
            Expr r = Expr::scalar(DimRational(1));
            for (long long i = 0; i < p; ++i) r = multiply(r, v);
            v = r;
        }
        return v;
    }
    Expr primary() {
        size_t line = lex.line, col = lex.col;
        if (lex.accept('-')) return DimRational(-1) * primary();
        if (lex.accept('(')) {
            // could be a parenthesized expression or a coefficient; the
            // grammar is unified: parse as expression (scalars embed).
            Expr v = expr();
            lex.expect(')');
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(lex.peek())))
            return Expr::scalar(DimRational(lex.integer()));
        if (lex.accept_word("n")) return Expr::scalar(DimRational::n());
        if (lex.accept_word("nabla")) {
            lex.expect('[');
            Index a = index();
            if (a.kind == IndexKind::Tractor)
                throw ParseError("nabla index must be a tensor index", line, col);
            lex.expect(']');
            lex.expect('(');
            Expr v = expr();
            lex.expect(')');
            // the parentheses delimit the derivative's scope; distribute it
            // onto the argument now so that later multiplication cannot
            // widen the scope
            if (fully_expanded(v)) return leibniz_expand(apply_node(NablaNode{a}, v));
            return apply_node(NablaNode{a}, v);
        }
        if (lex.accept_word("Box")) {
            lex.expect('(');
            Expr v = expr();
            lex.expect(')');
            return apply_node(BoxNode{}, v);
        }
        if (lex.accept_word("DD")) {
            lex.expect('[');
            Index A = index();
            lex.expect(',');
            Index P = index();
            lex.expect(']');
            if (A.kind != IndexKind::Tractor || P.kind != IndexKind::Tractor)
                throw ParseError("DD indices must be tractor indices", line, col);
            lex.expect('(');
            Expr v = expr();
            lex.expect(')');
            return apply_node(DoubleDNode{A, P}, v);
        }
        if (lex.accept_word("D")) {
            lex.expect('[');
            Index A = index();
            lex.expect(']');
            if (A.kind != IndexKind::Tractor)
                throw ParseError("D index must be a tractor index", line, col);
            lex.expect('(');
            Expr v = expr();
            lex.expect(')');
            return apply_node(DNode{A}, v);
        }
        // atom or section
        std::string name = lex.ident();
        int kid;
        auto it = builtin_atoms().find(name);
        if (it != builtin_atoms().end()) {
            kid = it->second;
        } else {
            kid = find_section(name);
            if (kid < 0)
                throw ParseError("unknown atom or undeclared section '" + name + "'", line, col);
        }
        Atom a;
        a.kind = kid;
        if (lex.peek() == '[') a.idx = index_list();
        const AtomKindInfo& info = kind_info(kid);
        if (a.idx.size() != info.slots.size())
            throw ParseError("atom '" + name + "' expects " +
                                 std::to_string(info.slots.size()) + " indices, got " +
                                 std::to_string(a.idx.size()),
                             line, col);
        for (size_t i = 0; i < a.idx.size(); ++i)
            if (a.idx[i].kind != info.slots[i])
                throw ParseError("index kind mismatch in '" + name + "' slot " +
                                     std::to_string(i),
                                 line, col);
        return Expr(Term(DimRational(1), {a}));
    }

    // --- declarations --------------------------------------------------------
    void declaration() {
        // section NAME [indexkinds] : weight( affine ) [parallel]
        std::string name = lex.ident();
        std::vector<IndexKind> slots;
        if (lex.peek() == '[') {
            lex.expect('[');
            if (!lex.accept(']')) {
                do {
                    std::string k = lex.ident();
                    if (k == "tensor") slots.push_back(IndexKind::Tensor);
                    else if (k == "tractor") slots.push_back(IndexKind::Tractor);
                    else lex.fail("expected 'tensor' or 'tractor'");
                } while (lex.accept(','));
                lex.expect(']');
            }
        }
        lex.expect(':');
        if (!lex.accept_word("weight")) lex.fail("expected 'weight'");
        lex.expect('(');
        DimRational w = coeff_expr();
        lex.expect(')');
        bool parallel = lex.accept_word("parallel");
        lex.accept(';');
        // affine check: weight must be a polynomial of degree <= 1
        if (w.den().degree() != 0 || w.num().degree() > 1)
            lex.fail("section weight must be affine in n");
        const BigInt& d = w.den().leading();
        Weight wt{Rational(w.num().coeff(0), d), Rational(w.num().coeff(1), d)};
        register_section(name, slots, wt, parallel);
    }

    Expr document() {
        while (lex.accept_word("section")) declaration();
        if (lex.eof()) return Expr::zero();
        Expr e = expr();
        if (!lex.eof()) lex.fail("trailing input");
        for (const Term& t : e.terms) check_indices(t);
        return merge(e);
    }
};

}  // namespace

Expr parse(const std::string& text) {
    Parser p(text);
    return p.document();
}

DimRational parse_coefficient(const std::string& text) {
    Parser p(text);
    DimRational v = p.coeff_expr();
    if (!p.lex.eof()) p.lex.fail("trailing input");
    return v;
}

}  // namespace tracktor
