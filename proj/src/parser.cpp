#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>
#include <string>

#include "shapeinv/expr.hpp"

namespace shapeinv::sym {

// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' factor)?
//   base   := number | ident | ident '(' expr ')' | '(' expr ')' | '-' base
// Numbers are integers, decimals (with optional exponent), or integer ratios
// p/q (folded to exact rationals via the '/' rule). Identifiers match
// [A-Za-z][A-Za-z0-9_]*; 'hbar' is the reserved hbar symbol and 'pi' parses
// as a numeric constant.

namespace {

struct Parser {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool at_end() {
        skip_ws();
        return pos >= text.size();
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    bool accept(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c) {
        skip_ws();
        if (pos >= text.size() || text[pos] != c)
            throw ParseError(std::string("expected '") + c + "'", pos);
        ++pos;
    }

    Expr parse_expr() {
        Expr acc = parse_term();
        for (;;) {
            if (accept('+'))
                acc = Expr::binary(BinaryOp::Add, acc, parse_term());
            else if (accept('-'))
                acc = Expr::binary(BinaryOp::Sub, acc, parse_term());
            else
                break;
        }
        return acc;
    }

    Expr parse_term() {
        Expr acc = parse_factor();
        for (;;) {
            if (accept('*')) {
                acc = Expr::binary(BinaryOp::Mul, acc, parse_factor());
            } else if (accept('/')) {
                Expr rhs = parse_factor();
                // integer ratio p/q is a number form: fold exactly
                if (acc.is_exact() && rhs.is_exact()) {
                    auto r = rat_div(acc.rational_value(), rhs.rational_value());
                    if (r) {
                        acc = Expr::rational(*r);
                        continue;
                    }
                }
                acc = Expr::binary(BinaryOp::Div, acc, rhs);
            } else {
                break;
            }
        }
        return acc;
    }

    Expr parse_factor() {
        Expr base = parse_base();
        if (accept('^')) return Expr::binary(BinaryOp::Pow, base, parse_factor());
        return base;
    }

    Expr parse_base() {
        skip_ws();
        if (pos >= text.size()) throw ParseError("unexpected end of input", pos);
        const char c = text[pos];
        if (c == '-') {
            ++pos;
            Expr inner = parse_base();
            if (inner.is_constant()) return -inner;  // fold signed constants
            return Expr::unary(UnaryFn::Neg, inner);
        }
        if (c == '(') {
            ++pos;
            Expr e = parse_expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_ident();
        throw ParseError(std::string("unexpected character '") + c + "'", pos);
    }

    Expr parse_number() {
        const std::size_t start = pos;
        bool is_float = false;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos < text.size() && text[pos] == '.') {
            is_float = true;
            ++pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        }
        if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
            std::size_t epos = pos + 1;
            if (epos < text.size() && (text[epos] == '+' || text[epos] == '-')) ++epos;
            if (epos < text.size() && std::isdigit(static_cast<unsigned char>(text[epos]))) {
                is_float = true;
                pos = epos;
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            }
        }
        const std::string_view tok = text.substr(start, pos - start);
        if (tok.empty() || tok == ".") throw ParseError("malformed number", start);
        if (!is_float) {
            long long v = 0;
            auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (res.ec == std::errc() && res.ptr == tok.data() + tok.size()) return Expr::integer(v);
            // fall through for out-of-range integers
        }
        double d = 0;
        auto res = std::from_chars(tok.data(), tok.data() + tok.size(), d);
        if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
            throw ParseError("malformed number", start);
        return Expr::number(d);
    }

    Expr parse_ident() {
        const std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        std::string name(text.substr(start, pos - start));
        skip_ws();
        if (pos < text.size() && text[pos] == '(') {
            auto fn = lookup_function(name);
            if (!fn) throw ParseError("unknown function '" + name + "'", start);
            ++pos;
            Expr arg = parse_expr();
            expect(')');
            return Expr::unary(*fn, arg);
        }
        if (name == "pi") return Expr::number(M_PI);
        return Expr::symbol(std::move(name));
    }

    static std::optional<UnaryFn> lookup_function(const std::string& name) {
        if (name == "exp") return UnaryFn::Exp;
        if (name == "ln" || name == "log") return UnaryFn::Ln;
        if (name == "sqrt") return UnaryFn::Sqrt;
        if (name == "sin") return UnaryFn::Sin;
        if (name == "cos") return UnaryFn::Cos;
        if (name == "tan") return UnaryFn::Tan;
        if (name == "sec") return UnaryFn::Sec;
        if (name == "csc" || name == "cosec") return UnaryFn::Csc;
        if (name == "cot") return UnaryFn::Cot;
        if (name == "sinh") return UnaryFn::Sinh;
        if (name == "cosh") return UnaryFn::Cosh;
        if (name == "tanh") return UnaryFn::Tanh;
        if (name == "sech") return UnaryFn::Sech;
        if (name == "csch" || name == "cosech") return UnaryFn::Csch;
        if (name == "coth") return UnaryFn::Coth;
        if (name == "acos" || name == "arccos") return UnaryFn::Acos;
        if (name == "acoth" || name == "arccoth") return UnaryFn::Acoth;
        return std::nullopt;
    }
};

}  // namespace

Expr Expr::parse(std::string_view text) {
    Parser p{text};
    Expr e = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) throw ParseError("trailing input", p.pos);
    return e;
}

}  // namespace shapeinv::sym
