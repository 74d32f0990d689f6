#include "shapeinv/expr.hpp"

#include <charconv>
#include <cmath>
#include <vector>

namespace shapeinv::sym {

struct ExprNode {
    Expr::Kind kind;

    // Constant
    bool exact = false;
    Rational rat{0, 1};
    double fval = 0.0;

    // Symbol
    std::string name;

    // Unary / Binary
    UnaryFn fn{};
    BinaryOp op{};
    Expr a;  // unary child or binary lhs
    Expr b;  // binary rhs

    static Expr make(ExprNode n) { return Expr(std::make_shared<const ExprNode>(std::move(n))); }
};

namespace {

Expr make_constant_rat(Rational r) {
    ExprNode n;
    n.kind = Expr::Kind::Constant;
    n.exact = true;
    n.rat = r;
    n.fval = r.value();
    return ExprNode::make(std::move(n));
}

Expr make_constant_f(double v) {
    ExprNode n;
    n.kind = Expr::Kind::Constant;
    n.exact = false;
    n.fval = v;
    return ExprNode::make(std::move(n));
}

const Expr& zero_expr() {
    static const Expr z = make_constant_rat(Rational{0, 1});
    return z;
}
const Expr& one_expr() {
    static const Expr o = make_constant_rat(Rational{1, 1});
    return o;
}

}  // namespace

Expr::Expr() : node_(zero_expr().node_) {}

Expr Expr::integer(long long n) { return make_constant_rat(Rational{n, 1}); }

Expr Expr::rational(long long num, long long den) {
    auto r = Rational::make(num, den);
    if (!r) throw Error("invalid rational constant");
    return make_constant_rat(*r);
}

Expr Expr::rational(Rational r) { return make_constant_rat(r); }

Expr Expr::number(double v) {
    // Integral doubles of moderate size become exact integers so that
    // parser output and arithmetic folding stay in the rational domain.
    if (std::isfinite(v) && std::nearbyint(v) == v && std::abs(v) < 1e15)
        return make_constant_rat(Rational{static_cast<long long>(v), 1});
    return make_constant_f(v);
}

Expr Expr::symbol(std::string name) {
    ExprNode n;
    n.kind = Kind::Symbol;
    n.name = std::move(name);
    return ExprNode::make(std::move(n));
}

Expr Expr::unary(UnaryFn fn, Expr child) {
    ExprNode n;
    n.kind = Kind::Unary;
    n.fn = fn;
    n.a = std::move(child);
    return ExprNode::make(std::move(n));
}

Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs) {
    ExprNode n;
    n.kind = Kind::Binary;
    n.op = op;
    n.a = std::move(lhs);
    n.b = std::move(rhs);
    return ExprNode::make(std::move(n));
}

Expr::Kind Expr::kind() const { return node().kind; }
bool Expr::is_constant() const { return node().kind == Kind::Constant; }
bool Expr::is_exact() const { return is_constant() && node().exact; }
Rational Expr::rational_value() const { return node().rat; }
double Expr::constant_value() const { return node().fval; }
const std::string& Expr::symbol_name() const { return node().name; }
UnaryFn Expr::unary_fn() const { return node().fn; }
BinaryOp Expr::binary_op() const { return node().op; }
const Expr& Expr::child() const { return node().a; }
const Expr& Expr::lhs() const { return node().a; }
const Expr& Expr::rhs() const { return node().b; }

bool Expr::is_zero() const { return is_constant() && node().fval == 0.0 && (!node().exact || node().rat.is_zero()); }
bool Expr::is_one() const {
    return is_constant() && (node().exact ? (node().rat == Rational{1, 1}) : node().fval == 1.0);
}

// ---------------------------------------------------------------------------
// Folding constructors

namespace {

bool both_const(const Expr& a, const Expr& b) { return a.is_constant() && b.is_constant(); }

Expr fold_binary(BinaryOp op, const Expr& a, const Expr& b) {
    if (a.is_exact() && b.is_exact()) {
        const Rational x = a.rational_value(), y = b.rational_value();
        std::optional<Rational> r;
        switch (op) {
            case BinaryOp::Add: r = rat_add(x, y); break;
            case BinaryOp::Sub: r = rat_sub(x, y); break;
            case BinaryOp::Mul: r = rat_mul(x, y); break;
            case BinaryOp::Div: r = rat_div(x, y); break;
            case BinaryOp::Pow:
                if (y.is_integer()) r = rat_pow(x, y.num);
                break;
        }
        if (r) return Expr::rational(*r);
        if (op == BinaryOp::Div && y.is_zero()) return Expr::binary(op, a, b);  // keep the pole
    }
    if (both_const(a, b)) {
        const double x = a.constant_value(), y = b.constant_value();
        switch (op) {
            case BinaryOp::Add: return Expr::number(x + y);
            case BinaryOp::Sub: return Expr::number(x - y);
            case BinaryOp::Mul: return Expr::number(x * y);
            case BinaryOp::Div:
                if (y != 0.0) return Expr::number(x / y);
                break;
            case BinaryOp::Pow: {
                if (x > 0.0 || std::nearbyint(y) == y) {
                    const double p = std::pow(x, y);
                    if (std::isfinite(p)) return Expr::number(p);
                }
                break;
            }
        }
    }
    return Expr::binary(op, a, b);
}

}  // namespace

Expr operator+(const Expr& a, const Expr& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (both_const(a, b)) return fold_binary(BinaryOp::Add, a, b);
    return Expr::binary(BinaryOp::Add, a, b);
}

Expr operator-(const Expr& a, const Expr& b) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return -b;
    if (both_const(a, b)) return fold_binary(BinaryOp::Sub, a, b);
    return Expr::binary(BinaryOp::Sub, a, b);
}

Expr operator*(const Expr& a, const Expr& b) {
    if (a.is_zero() || b.is_zero()) return Expr::integer(0);
    if (a.is_one()) return b;
    if (b.is_one()) return a;
    if (both_const(a, b)) return fold_binary(BinaryOp::Mul, a, b);
    return Expr::binary(BinaryOp::Mul, a, b);
}

Expr operator/(const Expr& a, const Expr& b) {
    if (a.is_zero() && !b.is_zero()) return Expr::integer(0);
    if (b.is_one()) return a;
    if (both_const(a, b)) return fold_binary(BinaryOp::Div, a, b);
    return Expr::binary(BinaryOp::Div, a, b);
}

Expr operator-(const Expr& a) {
    if (a.is_constant()) {
        if (a.is_exact()) return Expr::rational(Rational{-a.rational_value().num, a.rational_value().den});
        return Expr::number(-a.constant_value());
    }
    if (a.kind() == Expr::Kind::Unary && a.unary_fn() == UnaryFn::Neg) return a.child();
    return Expr::unary(UnaryFn::Neg, a);
}

Expr pow(const Expr& base, const Expr& exponent) {
    if (exponent.is_zero()) return Expr::integer(1);
    if (exponent.is_one()) return base;
    if (both_const(base, exponent)) return fold_binary(BinaryOp::Pow, base, exponent);
    return Expr::binary(BinaryOp::Pow, base, exponent);
}

Expr apply(UnaryFn fn, const Expr& x) {
    if (fn == UnaryFn::Neg) return -x;
    return Expr::unary(fn, x);
}

Expr imaginary_unit() {
    return Expr::binary(BinaryOp::Pow, Expr::integer(-1), Expr::rational(1, 2));
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

using cplx = std::complex<double>;

constexpr double kPoleTol = 1e-300;

void check_finite_real(double v) {
    if (!std::isfinite(v)) throw PoleError("non-finite value during evaluation");
}
void check_finite_cplx(const cplx& v) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw PoleError("non-finite value during evaluation");
}

double eval_real(const ExprNode& n, const Bindings& b);

double eval_real_expr(const Expr& e, const Bindings& b);

double eval_real(const ExprNode& n, const Bindings& b) {
    switch (n.kind) {
        case Expr::Kind::Constant:
            return n.fval;
        case Expr::Kind::Symbol: {
            const cplx v = b.get(n.name);
            if (v.imag() != 0.0) throw DomainError("complex binding for '" + n.name + "' in real mode");
            return v.real();
        }
        case Expr::Kind::Unary: {
            const double v = eval_real_expr(n.a, b);
            double r = 0;
            switch (n.fn) {
                case UnaryFn::Neg: r = -v; break;
                case UnaryFn::Exp: r = std::exp(v); break;
                case UnaryFn::Ln:
                    if (v <= 0.0) throw DomainError("ln of non-positive value in real mode");
                    r = std::log(v);
                    break;
                case UnaryFn::Sqrt:
                    if (v < 0.0) throw DomainError("sqrt of negative value in real mode");
                    r = std::sqrt(v);
                    break;
                case UnaryFn::Sin: r = std::sin(v); break;
                case UnaryFn::Cos: r = std::cos(v); break;
                case UnaryFn::Tan: {
                    const double c = std::cos(v);
                    if (std::abs(c) < kPoleTol) throw PoleError("tan pole");
                    r = std::sin(v) / c;
                    break;
                }
                case UnaryFn::Sec: {
                    const double c = std::cos(v);
                    if (std::abs(c) < kPoleTol) throw PoleError("sec pole");
                    r = 1.0 / c;
                    break;
                }
                case UnaryFn::Csc: {
                    const double s = std::sin(v);
                    if (std::abs(s) < kPoleTol) throw PoleError("csc pole");
                    r = 1.0 / s;
                    break;
                }
                case UnaryFn::Cot: {
                    const double s = std::sin(v);
                    if (std::abs(s) < kPoleTol) throw PoleError("cot pole");
                    r = std::cos(v) / s;
                    break;
                }
                case UnaryFn::Sinh: r = std::sinh(v); break;
                case UnaryFn::Cosh: r = std::cosh(v); break;
                case UnaryFn::Tanh: r = std::tanh(v); break;
                case UnaryFn::Sech: r = 1.0 / std::cosh(v); break;
                case UnaryFn::Csch: {
                    const double s = std::sinh(v);
                    if (std::abs(s) < kPoleTol) throw PoleError("csch pole");
                    r = 1.0 / s;
                    break;
                }
                case UnaryFn::Coth: {
                    const double s = std::sinh(v);
                    if (std::abs(s) < kPoleTol) throw PoleError("coth pole");
                    r = std::cosh(v) / s;
                    break;
                }
                case UnaryFn::Acos:
                    if (v < -1.0 || v > 1.0) throw DomainError("acos argument outside [-1,1] in real mode");
                    r = std::acos(v);
                    break;
                case UnaryFn::Acoth:
                    if (v >= -1.0 && v <= 1.0) throw DomainError("acoth argument inside [-1,1] in real mode");
                    r = 0.5 * std::log((v + 1.0) / (v - 1.0));
                    break;
            }
            check_finite_real(r);
            return r;
        }
        case Expr::Kind::Binary: {
            const double x = eval_real_expr(n.a, b);
            const double y = eval_real_expr(n.b, b);
            double r = 0;
            switch (n.op) {
                case BinaryOp::Add: r = x + y; break;
                case BinaryOp::Sub: r = x - y; break;
                case BinaryOp::Mul: r = x * y; break;
                case BinaryOp::Div:
                    if (std::abs(y) < kPoleTol) throw PoleError("division by zero");
                    r = x / y;
                    break;
                case BinaryOp::Pow: {
                    const bool int_exp = std::nearbyint(y) == y;
                    if (x == 0.0) {
                        if (y > 0.0) return 0.0;
                        if (y == 0.0) return 1.0;
                        throw PoleError("zero base with negative exponent");
                    }
                    if (x < 0.0 && !int_exp)
                        throw DomainError("negative base with non-integer exponent in real mode");
                    r = std::pow(x, y);
                    break;
                }
            }
            check_finite_real(r);
            return r;
        }
    }
    throw Error("corrupt expression node");
}

double eval_real_expr(const Expr& e, const Bindings& b) {
    // Expr::evaluate dispatches here; go through the public surface once.
    return e.evaluate_real(b);
}

cplx eval_cplx_expr(const Expr& e, const Bindings& b) { return e.evaluate(b); }

cplx eval_cplx(const ExprNode& n, const Bindings& b) {
    switch (n.kind) {
        case Expr::Kind::Constant:
            return cplx(n.fval, 0.0);
        case Expr::Kind::Symbol:
            return b.get(n.name);
        case Expr::Kind::Unary: {
            const cplx v = eval_cplx_expr(n.a, b);
            cplx r;
            switch (n.fn) {
                case UnaryFn::Neg: r = -v; break;
                case UnaryFn::Exp: r = std::exp(v); break;
                case UnaryFn::Ln:
                    if (std::abs(v) < kPoleTol) throw PoleError("ln of zero");
                    r = std::log(v);
                    break;
                case UnaryFn::Sqrt: r = std::sqrt(v); break;
                case UnaryFn::Sin: r = std::sin(v); break;
                case UnaryFn::Cos: r = std::cos(v); break;
                case UnaryFn::Tan: {
                    const cplx c = std::cos(v);
                    if (std::abs(c) < kPoleTol) throw PoleError("tan pole");
                    r = std::sin(v) / c;
                    break;
                }
                case UnaryFn::Sec: {
                    const cplx c = std::cos(v);
                    if (std::abs(c) < kPoleTol) throw PoleError("sec pole");
                    r = 1.0 / c;
                    break;
                }
                case UnaryFn::Csc: {
                    const cplx s = std::sin(v);
                    if (std::abs(s) < kPoleTol) throw PoleError("csc pole");
                    r = 1.0 / s;
                    break;
                }
                case UnaryFn::Cot: {
                    const cplx s = std::sin(v);
                    if (std::abs(s) < kPoleTol) throw PoleError("cot pole");
                    r = std::cos(v) / s;
                    break;
                }
                case UnaryFn::Sinh: r = std::sinh(v); break;
                case UnaryFn::Cosh: r = std::cosh(v); break;
                case UnaryFn::Tanh: r = std::tanh(v); break;
                case UnaryFn::Sech: r = 1.0 / std::cosh(v); break;
                case UnaryFn::Csch: {
                    const cplx s = std::sinh(v);
                    if (std::abs(s) < kPoleTol) throw PoleError("csch pole");
                    r = 1.0 / s;
                    break;
                }
                case UnaryFn::Coth: {
                    const cplx s = std::sinh(v);
                    if (std::abs(s) < kPoleTol) throw PoleError("coth pole");
                    r = std::cosh(v) / s;
                    break;
                }
                case UnaryFn::Acos: r = std::acos(v); break;
                case UnaryFn::Acoth: {
                    const cplx d = v - 1.0;
                    if (std::abs(d) < kPoleTol || std::abs(v + 1.0) < kPoleTol)
                        throw PoleError("acoth pole");
                    r = 0.5 * std::log((v + 1.0) / d);
                    break;
                }
            }
            check_finite_cplx(r);
            return r;
        }
        case Expr::Kind::Binary: {
            const cplx x = eval_cplx_expr(n.a, b);
            const cplx y = eval_cplx_expr(n.b, b);
            cplx r;
            switch (n.op) {
                case BinaryOp::Add: r = x + y; break;
                case BinaryOp::Sub: r = x - y; break;
                case BinaryOp::Mul: r = x * y; break;
                case BinaryOp::Div:
                    if (std::abs(y) < kPoleTol) throw PoleError("division by zero");
                    r = x / y;
                    break;
                case BinaryOp::Pow: {
                    if (std::abs(x) < kPoleTol) {
                        if (y.imag() == 0.0 && y.real() > 0.0) return cplx(0.0, 0.0);
                        if (y.imag() == 0.0 && y.real() == 0.0) return cplx(1.0, 0.0);
                        throw PoleError("zero base with non-positive exponent");
                    }
                    r = std::pow(x, y);
                    break;
                }
            }
            check_finite_cplx(r);
            return r;
        }
    }
    throw Error("corrupt expression node");
}

}  // namespace

std::complex<double> Expr::evaluate(const Bindings& b) const {
    if (b.mode() == EvalMode::Real) return cplx(eval_real(node(), b), 0.0);
    return eval_cplx(node(), b);
}

double Expr::evaluate_real(const Bindings& b) const {
    if (b.mode() == EvalMode::Real) return eval_real(node(), b);
    const cplx v = eval_cplx(node(), b);
    if (std::abs(v.imag()) > 1e-12 * (1.0 + std::abs(v.real())))
        throw DomainError("complex result where a real value was required");
    return v.real();
}

// ---------------------------------------------------------------------------
// Differentiation

Expr Expr::derivative(std::string_view s) const {
    const ExprNode& n = node();
    switch (n.kind) {
        case Kind::Constant:
            return Expr::integer(0);
        case Kind::Symbol:
            return n.name == s ? Expr::integer(1) : Expr::integer(0);
        case Kind::Unary: {
            const Expr& u = n.a;
            const Expr du = u.derivative(s);
            if (du.is_zero()) return Expr::integer(0);
            switch (n.fn) {
                case UnaryFn::Neg: return -du;
                case UnaryFn::Exp: return exp(u) * du;
                case UnaryFn::Ln: return du / u;
                case UnaryFn::Sqrt: return du / (Expr::integer(2) * sqrt(u));
                case UnaryFn::Sin: return cos(u) * du;
                case UnaryFn::Cos: return -(sin(u) * du);
                case UnaryFn::Tan: return pow(sec(u), Expr::integer(2)) * du;
                case UnaryFn::Sec: return sec(u) * tan(u) * du;
                case UnaryFn::Csc: return -(csc(u) * cot(u) * du);
                case UnaryFn::Cot: return -(pow(csc(u), Expr::integer(2)) * du);
                case UnaryFn::Sinh: return cosh(u) * du;
                case UnaryFn::Cosh: return sinh(u) * du;
                case UnaryFn::Tanh: return pow(sech(u), Expr::integer(2)) * du;
                case UnaryFn::Sech: return -(sech(u) * tanh(u) * du);
                case UnaryFn::Csch: return -(csch(u) * coth(u) * du);
                case UnaryFn::Coth: return -(pow(csch(u), Expr::integer(2)) * du);
                case UnaryFn::Acos:
                    return -(du / sqrt(Expr::integer(1) - pow(u, Expr::integer(2))));
                case UnaryFn::Acoth:
                    return du / (Expr::integer(1) - pow(u, Expr::integer(2)));
            }
            throw Error("corrupt unary node");
        }
        case Kind::Binary: {
            const Expr& f = n.a;
            const Expr& g = n.b;
            switch (n.op) {
                case BinaryOp::Add: return f.derivative(s) + g.derivative(s);
                case BinaryOp::Sub: return f.derivative(s) - g.derivative(s);
                case BinaryOp::Mul: return f.derivative(s) * g + f * g.derivative(s);
                case BinaryOp::Div: {
                    const Expr df = f.derivative(s), dg = g.derivative(s);
                    if (dg.is_zero()) return df / g;
                    return (df * g - f * dg) / pow(g, Expr::integer(2));
                }
                case BinaryOp::Pow: {
                    const Expr df = f.derivative(s), dg = g.derivative(s);
                    if (dg.is_zero()) {
                        // d f^c = c f^(c-1) f'
                        if (df.is_zero()) return Expr::integer(0);
                        return g * pow(f, g - Expr::integer(1)) * df;
                    }
                    // general: f^g (g' ln f + g f'/f)
                    return pow(f, g) * (dg * ln(f) + g * df / f);
                }
            }
            throw Error("corrupt binary node");
        }
    }
    throw Error("corrupt expression node");
}

// ---------------------------------------------------------------------------
// Substitution, symbol collection, equality

Expr Expr::substitute(std::string_view s, const Expr& replacement) const {
    const ExprNode& n = node();
    switch (n.kind) {
        case Kind::Constant:
            return *this;
        case Kind::Symbol:
            return n.name == s ? replacement : *this;
        case Kind::Unary: {
            Expr c = n.a.substitute(s, replacement);
            if (c.node_ == n.a.node_) return *this;
            return apply(n.fn, c);
        }
        case Kind::Binary: {
            Expr l = n.a.substitute(s, replacement);
            Expr r = n.b.substitute(s, replacement);
            if (l.node_ == n.a.node_ && r.node_ == n.b.node_) return *this;
            switch (n.op) {
                case BinaryOp::Add: return l + r;
                case BinaryOp::Sub: return l - r;
                case BinaryOp::Mul: return l * r;
                case BinaryOp::Div: return l / r;
                case BinaryOp::Pow: return pow(l, r);
            }
        }
    }
    throw Error("corrupt expression node");
}

void collect_symbols_impl(const Expr& e, std::set<std::string>& out) {
    switch (e.kind()) {
        case Expr::Kind::Constant: return;
        case Expr::Kind::Symbol: out.insert(e.symbol_name()); return;
        case Expr::Kind::Unary: collect_symbols_impl(e.child(), out); return;
        case Expr::Kind::Binary:
            collect_symbols_impl(e.lhs(), out);
            collect_symbols_impl(e.rhs(), out);
            return;
    }
}

std::set<std::string> Expr::symbols() const {
    std::set<std::string> out;
    collect_symbols_impl(*this, out);
    return out;
}

bool Expr::contains_symbol(std::string_view name) const {
    switch (kind()) {
        case Kind::Constant: return false;
        case Kind::Symbol: return symbol_name() == name;
        case Kind::Unary: return child().contains_symbol(name);
        case Kind::Binary: return lhs().contains_symbol(name) || rhs().contains_symbol(name);
    }
    return false;
}

bool Expr::same_tree(const Expr& other) const {
    if (node_ == other.node_) return true;
    const ExprNode& x = node();
    const ExprNode& y = other.node();
    if (x.kind != y.kind) return false;
    switch (x.kind) {
        case Kind::Constant:
            if (x.exact != y.exact) return false;
            return x.exact ? (x.rat == y.rat) : (x.fval == y.fval);
        case Kind::Symbol:
            return x.name == y.name;
        case Kind::Unary:
            return x.fn == y.fn && x.a.same_tree(y.a);
        case Kind::Binary:
            return x.op == y.op && x.a.same_tree(y.a) && x.b.same_tree(y.b);
    }
    return false;
}

std::size_t Expr::node_count() const {
    switch (kind()) {
        case Kind::Constant:
        case Kind::Symbol: return 1;
        case Kind::Unary: return 1 + child().node_count();
        case Kind::Binary: return 1 + lhs().node_count() + rhs().node_count();
    }
    return 1;
}

// ---------------------------------------------------------------------------
// Simplification: bottom-up folding plus flattening of +/* chains so
// constants collected across a chain fold together.

namespace {

void flatten_add(const Expr& e, std::vector<Expr>& terms, std::vector<int>& signs, int sign) {
    if (e.kind() == Expr::Kind::Binary && e.binary_op() == BinaryOp::Add) {
        flatten_add(e.lhs(), terms, signs, sign);
        flatten_add(e.rhs(), terms, signs, sign);
        return;
    }
    if (e.kind() == Expr::Kind::Binary && e.binary_op() == BinaryOp::Sub) {
        flatten_add(e.lhs(), terms, signs, sign);
        flatten_add(e.rhs(), terms, signs, -sign);
        return;
    }
    if (e.kind() == Expr::Kind::Unary && e.unary_fn() == UnaryFn::Neg) {
        flatten_add(e.child(), terms, signs, -sign);
        return;
    }
    terms.push_back(e);
    signs.push_back(sign);
}

void flatten_mul(const Expr& e, std::vector<Expr>& factors) {
    if (e.kind() == Expr::Kind::Binary && e.binary_op() == BinaryOp::Mul) {
        flatten_mul(e.lhs(), factors);
        flatten_mul(e.rhs(), factors);
        return;
    }
    factors.push_back(e);
}

Expr simplify_node(const Expr& e);

Expr rebuild_sum(const Expr& e) {
    std::vector<Expr> terms;
    std::vector<int> signs;
    flatten_add(e, terms, signs, 1);
    Expr const_part = Expr::integer(0);
    std::vector<Expr> rest;
    std::vector<int> rest_signs;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (terms[i].is_constant()) {
            const_part = signs[i] > 0 ? const_part + terms[i] : const_part - terms[i];
        } else {
            rest.push_back(terms[i]);
            rest_signs.push_back(signs[i]);
        }
    }
    Expr acc;
    bool have = false;
    if (!const_part.is_zero()) {
        acc = const_part;
        have = true;
    }
    for (std::size_t i = 0; i < rest.size(); ++i) {
        if (!have) {
            acc = rest_signs[i] > 0 ? rest[i] : -rest[i];
            have = true;
        } else {
            acc = rest_signs[i] > 0 ? acc + rest[i] : acc - rest[i];
        }
    }
    return have ? acc : Expr::integer(0);
}

Expr rebuild_product(const Expr& e) {
    std::vector<Expr> factors;
    flatten_mul(e, factors);
    Expr const_part = Expr::integer(1);
    std::vector<Expr> rest;
    for (const Expr& f : factors) {
        if (f.is_constant())
            const_part = const_part * f;
        else
            rest.push_back(f);
    }
    if (const_part.is_zero()) return Expr::integer(0);
    Expr acc;
    bool have = false;
    if (!const_part.is_one()) {
        acc = const_part;
        have = true;
    }
    for (const Expr& f : rest) {
        if (!have) {
            acc = f;
            have = true;
        } else {
            acc = acc * f;
        }
    }
    return have ? acc : Expr::integer(1);
}

Expr simplify_node(const Expr& e) {
    switch (e.kind()) {
        case Expr::Kind::Constant:
        case Expr::Kind::Symbol:
            return e;
        case Expr::Kind::Unary:
            return apply(e.unary_fn(), simplify_node(e.child()));
        case Expr::Kind::Binary: {
            Expr l = simplify_node(e.lhs());
            Expr r = simplify_node(e.rhs());
            Expr folded;
            switch (e.binary_op()) {
                case BinaryOp::Add: folded = l + r; break;
                case BinaryOp::Sub: folded = l - r; break;
                case BinaryOp::Mul: folded = l * r; break;
                case BinaryOp::Div: folded = l / r; break;
                case BinaryOp::Pow: return pow(l, r);
            }
            if (folded.kind() == Expr::Kind::Binary) {
                const BinaryOp op = folded.binary_op();
                if (op == BinaryOp::Add || op == BinaryOp::Sub) return rebuild_sum(folded);
                if (op == BinaryOp::Mul) return rebuild_product(folded);
            }
            return folded;
        }
    }
    return e;
}

}  // namespace

Expr Expr::simplified() const { return simplify_node(*this); }

// ---------------------------------------------------------------------------
// Printer. Output reparses to the identical tree; see parser.cpp for the
// grammar. Effective precedences: +,- (1); *,/ (2); ^ (3); unary minus (4);
// atoms (5). Fractional constants print as p/q and get fraction precedence.

const char* unary_name(UnaryFn fn) {
    switch (fn) {
        case UnaryFn::Neg: return "-";
        case UnaryFn::Exp: return "exp";
        case UnaryFn::Ln: return "ln";
        case UnaryFn::Sqrt: return "sqrt";
        case UnaryFn::Sin: return "sin";
        case UnaryFn::Cos: return "cos";
        case UnaryFn::Tan: return "tan";
        case UnaryFn::Sec: return "sec";
        case UnaryFn::Csc: return "csc";
        case UnaryFn::Cot: return "cot";
        case UnaryFn::Sinh: return "sinh";
        case UnaryFn::Cosh: return "cosh";
        case UnaryFn::Tanh: return "tanh";
        case UnaryFn::Sech: return "sech";
        case UnaryFn::Csch: return "csch";
        case UnaryFn::Coth: return "coth";
        case UnaryFn::Acos: return "acos";
        case UnaryFn::Acoth: return "acoth";
    }
    return "?";
}

namespace {

std::string format_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

int effective_prec(const Expr& e) {
    switch (e.kind()) {
        case Expr::Kind::Constant: {
            if (e.is_exact()) {
                const Rational r = e.rational_value();
                if (r.den != 1) return 2;  // prints as p/q
                return r.num < 0 ? 4 : 5;
            }
            return e.constant_value() < 0 ? 4 : 5;
        }
        case Expr::Kind::Symbol:
            return 5;
        case Expr::Kind::Unary:
            return e.unary_fn() == UnaryFn::Neg ? 4 : 5;  // f(x) is atomic
        case Expr::Kind::Binary:
            switch (e.binary_op()) {
                case BinaryOp::Add:
                case BinaryOp::Sub: return 1;
                case BinaryOp::Mul:
                case BinaryOp::Div: return 2;
                case BinaryOp::Pow: return 3;
            }
    }
    return 5;
}

void print_to(const Expr& e, int min_prec, std::string& out) {
    const bool parens = effective_prec(e) < min_prec;
    if (parens) out += '(';
    switch (e.kind()) {
        case Expr::Kind::Constant: {
            if (e.is_exact()) {
                const Rational r = e.rational_value();
                out += std::to_string(r.num);
                if (r.den != 1) {
                    out += '/';
                    out += std::to_string(r.den);
                }
            } else {
                out += format_double(e.constant_value());
            }
            break;
        }
        case Expr::Kind::Symbol:
            out += e.symbol_name();
            break;
        case Expr::Kind::Unary: {
            if (e.unary_fn() == UnaryFn::Neg) {
                out += '-';
                print_to(e.child(), 4, out);
            } else {
                out += unary_name(e.unary_fn());
                out += '(';
                print_to(e.child(), 0, out);
                out += ')';
            }
            break;
        }
        case Expr::Kind::Binary: {
            const BinaryOp op = e.binary_op();
            const char* sym = op == BinaryOp::Add   ? "+"
                              : op == BinaryOp::Sub ? "-"
                              : op == BinaryOp::Mul ? "*"
                              : op == BinaryOp::Div ? "/"
                                                    : "^";
            const int prec = effective_prec(e);
            if (op == BinaryOp::Pow) {
                print_to(e.lhs(), prec + 1, out);
                out += sym;
                print_to(e.rhs(), prec, out);  // right-associative
            } else {
                print_to(e.lhs(), prec, out);
                out += sym;
                print_to(e.rhs(), prec + 1, out);
            }
            break;
        }
    }
    if (parens) out += ')';
}

}  // namespace

std::string Expr::str() const {
    std::string out;
    print_to(*this, 0, out);
    return out;
}

}  // namespace shapeinv::sym
