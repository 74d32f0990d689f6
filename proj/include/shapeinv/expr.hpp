#pragma once

#include <complex>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>

#include "shapeinv/errors.hpp"
#include "shapeinv/rational.hpp"

namespace shapeinv::sym {

// Restricted symbolic expression kernel: immutable trees over one spatial
// variable, named parameters and hbar. Supports exact differentiation,
// real/complex evaluation and light structural simplification. Semantic
// equality is delegated to randomized sampling (see sampler.hpp).
//
// Complex evaluation uses principal branches throughout:
//   ln, sqrt, ^      — principal log (branch cut along the negative real axis)
//   acos             — std::acos, cuts (-inf,-1) and (1,inf)
//   acoth(z)         — ln((z+1)/(z-1))/2, cut on [-1,1]

enum class UnaryFn {
    Neg,
    Exp,
    Ln,
    Sqrt,
    Sin,
    Cos,
    Tan,
    Sec,
    Csc,
    Cot,
    Sinh,
    Cosh,
    Tanh,
    Sech,
    Csch,
    Coth,
    Acos,
    Acoth,
};

enum class BinaryOp { Add, Sub, Mul, Div, Pow };

enum class EvalMode { Real, Complex };

class Bindings {
  public:
    explicit Bindings(EvalMode mode = EvalMode::Real) : mode_(mode) {}

    Bindings& set(const std::string& name, double v) {
        values_[name] = std::complex<double>(v, 0.0);
        return *this;
    }
    Bindings& set(const std::string& name, std::complex<double> v) {
        values_[name] = v;
        return *this;
    }
    bool has(const std::string& name) const { return values_.count(name) != 0; }
    std::complex<double> get(const std::string& name) const {
        auto it = values_.find(name);
        if (it == values_.end()) throw UnboundSymbolError(name);
        return it->second;
    }
    EvalMode mode() const { return mode_; }
    const std::map<std::string, std::complex<double>>& values() const { return values_; }

  private:
    EvalMode mode_;
    std::map<std::string, std::complex<double>> values_;
};

struct ExprNode;

class Expr {
  public:
    enum class Kind { Constant, Symbol, Unary, Binary };

    Expr();  // the constant 0

    // Leaf factories.
    static Expr integer(long long n);
    static Expr rational(long long num, long long den);
    static Expr rational(Rational r);
    static Expr number(double v);
    static Expr symbol(std::string name);

    // Raw node factories; no folding.
    static Expr unary(UnaryFn fn, Expr child);
    static Expr binary(BinaryOp op, Expr lhs, Expr rhs);

    // Node inspection.
    Kind kind() const;
    bool is_constant() const;
    bool is_exact() const;              // exact rational constant
    Rational rational_value() const;    // valid iff is_exact()
    double constant_value() const;      // valid iff is_constant()
    const std::string& symbol_name() const;
    UnaryFn unary_fn() const;
    BinaryOp binary_op() const;
    const Expr& child() const;  // unary operand
    const Expr& lhs() const;
    const Expr& rhs() const;

    bool is_zero() const;
    bool is_one() const;

    // Core operations.
    std::complex<double> evaluate(const Bindings& b) const;
    double evaluate_real(const Bindings& b) const;  // requires real mode result
    Expr derivative(std::string_view symbol) const;
    Expr substitute(std::string_view symbol, const Expr& replacement) const;
    Expr simplified() const;  // constant folding, 0/1 absorption, +/* flattening

    std::set<std::string> symbols() const;
    bool contains_symbol(std::string_view name) const;
    bool same_tree(const Expr& other) const;  // structural equality
    std::size_t node_count() const;

    std::string str() const;  // canonical text; parse(str()) reproduces the tree

    static Expr parse(std::string_view text);

  private:
    explicit Expr(std::shared_ptr<const ExprNode> n) : node_(std::move(n)) {}
    const ExprNode& node() const { return *node_; }
    std::shared_ptr<const ExprNode> node_;
    friend struct ExprNode;
};

// Folding constructors. These apply local identities (0/1 absorption,
// exact constant arithmetic, double negation) so derivative trees stay small.
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);

Expr pow(const Expr& base, const Expr& exponent);
Expr apply(UnaryFn fn, const Expr& x);

inline Expr exp(const Expr& x) { return apply(UnaryFn::Exp, x); }
inline Expr ln(const Expr& x) { return apply(UnaryFn::Ln, x); }
inline Expr sqrt(const Expr& x) { return apply(UnaryFn::Sqrt, x); }
inline Expr sin(const Expr& x) { return apply(UnaryFn::Sin, x); }
inline Expr cos(const Expr& x) { return apply(UnaryFn::Cos, x); }
inline Expr tan(const Expr& x) { return apply(UnaryFn::Tan, x); }
inline Expr sec(const Expr& x) { return apply(UnaryFn::Sec, x); }
inline Expr csc(const Expr& x) { return apply(UnaryFn::Csc, x); }
inline Expr cot(const Expr& x) { return apply(UnaryFn::Cot, x); }
inline Expr sinh(const Expr& x) { return apply(UnaryFn::Sinh, x); }
inline Expr cosh(const Expr& x) { return apply(UnaryFn::Cosh, x); }
inline Expr tanh(const Expr& x) { return apply(UnaryFn::Tanh, x); }
inline Expr sech(const Expr& x) { return apply(UnaryFn::Sech, x); }
inline Expr csch(const Expr& x) { return apply(UnaryFn::Csch, x); }
inline Expr coth(const Expr& x) { return apply(UnaryFn::Coth, x); }
inline Expr acos(const Expr& x) { return apply(UnaryFn::Acos, x); }
inline Expr acoth(const Expr& x) { return apply(UnaryFn::Acoth, x); }

inline Expr sym(std::string name) { return Expr::symbol(std::move(name)); }
inline Expr num(long long n) { return Expr::integer(n); }
inline Expr num(double v) { return Expr::number(v); }
inline Expr rat(long long p, long long q) { return Expr::rational(p, q); }

// i as (-1)^(1/2); evaluates to the imaginary unit in complex mode.
Expr imaginary_unit();

const char* unary_name(UnaryFn fn);

}  // namespace shapeinv::sym
