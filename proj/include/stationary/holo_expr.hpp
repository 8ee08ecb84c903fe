#pragma once

// A small language for complex-analytic expressions.
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := unary ('^' integer)?
//   unary  := '-'? atom
//   atom   := number | 'i' | variable | func '(' expr ')' | '(' expr ')'
//   func   := exp | sin | cos | sinh | cosh
//
// Note that unary minus binds tighter than '^', so "-z^2" is (-z)^2. The
// exponent may carry a sign ("z^-1"). Expressions are immutable trees that
// share structure; derivatives are built with light algebraic simplification
// so that the derivative of a constant folds to the literal 0.

#include <charconv>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdio>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stationary/error.hpp"
#include "stationary/quadrature.hpp"

namespace stationary {

using Complex = std::complex<double>;

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

namespace expr_detail {

enum class Op { constant, variable, add, sub, mul, div, neg, pow, exp, sin, cos, sinh, cosh };

inline constexpr std::size_t no_offset = static_cast<std::size_t>(-1);

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  Op op;
  Complex value{};     // constant
  int index = 0;       // variable index, or integer exponent for pow
  NodePtr lhs, rhs;    // operands (lhs only for unary ops and functions)
  std::size_t offset = no_offset;
};

inline bool is_unary_function(Op op) {
  return op == Op::exp || op == Op::sin || op == Op::cos || op == Op::sinh || op == Op::cosh;
}

inline const char* function_name(Op op) {
  switch (op) {
    case Op::exp: return "exp";
    case Op::sin: return "sin";
    case Op::cos: return "cos";
    case Op::sinh: return "sinh";
    case Op::cosh: return "cosh";
    default: return "";
  }
}

inline Complex ipow(Complex base, int n) {
  if (n < 0) return Complex(1.0) / ipow(base, -n);
  Complex result(1.0);
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

inline Complex apply_function(Op op, Complex x) {
  switch (op) {
    case Op::exp: return std::exp(x);
    case Op::sin: return std::sin(x);
    case Op::cos: return std::cos(x);
    case Op::sinh: return 0.5 * (std::exp(x) - std::exp(-x));
    case Op::cosh: return 0.5 * (std::exp(x) + std::exp(-x));
    default: return x;
  }
}

// ---- smart constructors ---------------------------------------------------

inline NodePtr make_node(Node n) { return std::make_shared<const Node>(std::move(n)); }
inline NodePtr constant(Complex c, std::size_t off = no_offset) {
  return make_node({Op::constant, c, 0, nullptr, nullptr, off});
}
inline NodePtr variable(int idx, std::size_t off = no_offset) {
  return make_node({Op::variable, {}, idx, nullptr, nullptr, off});
}
inline bool is_const(const NodePtr& n) { return n->op == Op::constant; }
inline bool is_const(const NodePtr& n, Complex c) { return n->op == Op::constant && n->value == c; }

inline NodePtr add(NodePtr a, NodePtr b, std::size_t off = no_offset) {
  if (is_const(a) && is_const(b)) return constant(a->value + b->value, off);
  if (is_const(a, 0.0)) return b;
  if (is_const(b, 0.0)) return a;
  return make_node({Op::add, {}, 0, std::move(a), std::move(b), off});
}

inline NodePtr neg(NodePtr a, std::size_t off = no_offset) {
  if (is_const(a)) return constant(-a->value, off);
  if (a->op == Op::neg) return a->lhs;
  return make_node({Op::neg, {}, 0, std::move(a), nullptr, off});
}

inline NodePtr sub(NodePtr a, NodePtr b, std::size_t off = no_offset) {
  if (is_const(a) && is_const(b)) return constant(a->value - b->value, off);
  if (is_const(b, 0.0)) return a;
  if (is_const(a, 0.0)) return neg(std::move(b), off);
  return make_node({Op::sub, {}, 0, std::move(a), std::move(b), off});
}

inline NodePtr mul(NodePtr a, NodePtr b, std::size_t off = no_offset) {
  if (is_const(a) && is_const(b)) return constant(a->value * b->value, off);
  if (is_const(a, 0.0) || is_const(b, 0.0)) return constant(0.0, off);
  if (is_const(a, 1.0)) return b;
  if (is_const(b, 1.0)) return a;
  if (is_const(a, -1.0)) return neg(std::move(b), off);
  if (is_const(b, -1.0)) return neg(std::move(a), off);
  return make_node({Op::mul, {}, 0, std::move(a), std::move(b), off});
}

inline NodePtr div(NodePtr a, NodePtr b, std::size_t off = no_offset) {
  if (is_const(a, 0.0) && !is_const(b, 0.0)) return constant(0.0, off);
  if (is_const(b, 1.0)) return a;
  if (is_const(a) && is_const(b) && b->value != 0.0) return constant(a->value / b->value, off);
  return make_node({Op::div, {}, 0, std::move(a), std::move(b), off});
}

inline NodePtr pow(NodePtr a, int n, std::size_t off = no_offset) {
  if (n == 0) return constant(1.0, off);
  if (n == 1) return a;
  if (is_const(a) && (n > 0 || a->value != 0.0)) return constant(ipow(a->value, n), off);
  return make_node({Op::pow, {}, n, std::move(a), nullptr, off});
}

inline NodePtr func(Op op, NodePtr a, std::size_t off = no_offset) {
  if (is_const(a)) return constant(apply_function(op, a->value), off);
  return make_node({op, {}, 0, std::move(a), nullptr, off});
}

// ---- evaluation -----------------------------------------------------------

inline Complex eval(const Node& n, std::span<const Complex> vars) {
  switch (n.op) {
    case Op::constant: return n.value;
    case Op::variable: return vars[static_cast<std::size_t>(n.index)];
    case Op::add: return eval(*n.lhs, vars) + eval(*n.rhs, vars);
    case Op::sub: return eval(*n.lhs, vars) - eval(*n.rhs, vars);
    case Op::mul: return eval(*n.lhs, vars) * eval(*n.rhs, vars);
    case Op::div: {
      const Complex num = eval(*n.lhs, vars);
      const Complex den = eval(*n.rhs, vars);
      if (den == 0.0)
        throw Error(ErrorKind::division_by_zero,
                    n.offset == no_offset ? std::string("in derived expression")
                                          : "at byte offset " + std::to_string(n.offset));
      return num / den;
    }
    case Op::neg: return -eval(*n.lhs, vars);
    case Op::pow: {
      const Complex base = eval(*n.lhs, vars);
      if (n.index < 0 && base == 0.0)
        throw Error(ErrorKind::division_by_zero,
                    n.offset == no_offset ? std::string("negative power of zero")
                                          : "negative power of zero at byte offset " + std::to_string(n.offset));
      return ipow(base, n.index);
    }
    default: return apply_function(n.op, eval(*n.lhs, vars));
  }
}

// ---- differentiation ------------------------------------------------------

inline NodePtr derive(const NodePtr& n, int var) {
  const auto off = n->offset;
  switch (n->op) {
    case Op::constant: return constant(0.0);
    case Op::variable: return constant(n->index == var ? 1.0 : 0.0);
    case Op::add: return add(derive(n->lhs, var), derive(n->rhs, var));
    case Op::sub: return sub(derive(n->lhs, var), derive(n->rhs, var));
    case Op::neg: return neg(derive(n->lhs, var));
    case Op::mul:
      return add(mul(derive(n->lhs, var), n->rhs), mul(n->lhs, derive(n->rhs, var)));
    case Op::div: {
      auto du = derive(n->lhs, var);
      auto dv = derive(n->rhs, var);
      if (is_const(dv, 0.0)) return div(du, n->rhs, off);
      return div(sub(mul(du, n->rhs), mul(n->lhs, dv)), pow(n->rhs, 2, off), off);
    }
    case Op::pow: {
      const int k = n->index;
      return mul(mul(constant(static_cast<double>(k)), pow(n->lhs, k - 1, off)), derive(n->lhs, var));
    }
    case Op::exp: return mul(n, derive(n->lhs, var));
    case Op::sin: return mul(func(Op::cos, n->lhs), derive(n->lhs, var));
    case Op::cos: return mul(neg(func(Op::sin, n->lhs)), derive(n->lhs, var));
    case Op::sinh: return mul(func(Op::cosh, n->lhs), derive(n->lhs, var));
    case Op::cosh: return mul(func(Op::sinh, n->lhs), derive(n->lhs, var));
  }
  return constant(0.0);
}

inline bool mentions_variable(const Node& n) {
  if (n.op == Op::variable) return true;
  if (n.lhs && mentions_variable(*n.lhs)) return true;
  return n.rhs && mentions_variable(*n.rhs);
}

inline bool equal(const Node& a, const Node& b) {
  if (a.op != b.op || a.index != b.index) return false;
  if (a.op == Op::constant) return a.value == b.value;
  if (static_cast<bool>(a.lhs) != static_cast<bool>(b.lhs)) return false;
  if (static_cast<bool>(a.rhs) != static_cast<bool>(b.rhs)) return false;
  if (a.lhs && !equal(*a.lhs, *b.lhs)) return false;
  return !a.rhs || equal(*a.rhs, *b.rhs);
}

// ---- printing -------------------------------------------------------------

inline std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string print(const Node& n, const std::vector<std::string>& names) {
  switch (n.op) {
    case Op::constant: {
      const Complex c = n.value;
      if (c.imag() == 0.0 && !std::signbit(c.real())) return format_real(c.real());
      if (c.real() == 0.0 && c.imag() == 1.0) return "i";
      return "(" + format_real(c.real()) + "+" + format_real(c.imag()) + "*i)";
    }
    case Op::variable: return names[static_cast<std::size_t>(n.index)];
    case Op::add: return "(" + print(*n.lhs, names) + " + " + print(*n.rhs, names) + ")";
    case Op::sub: return "(" + print(*n.lhs, names) + " - " + print(*n.rhs, names) + ")";
    case Op::mul: return "(" + print(*n.lhs, names) + " * " + print(*n.rhs, names) + ")";
    case Op::div: return "(" + print(*n.lhs, names) + " / " + print(*n.rhs, names) + ")";
    case Op::neg: return "(-" + print(*n.lhs, names) + ")";
    case Op::pow: {
      std::string base = print(*n.lhs, names);
      if (n.lhs->op == Op::constant && base.front() != '(') base = "(" + base + ")";
      return base + "^" + std::to_string(n.index);
    }
    default: return std::string(function_name(n.op)) + "(" + print(*n.lhs, names) + ")";
  }
}

// ---- parsing --------------------------------------------------------------

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& names) : text_(text), names_(names) {}

  NodePtr parse() {
    skip_ws();
    if (pos_ == text_.size()) fail(ErrorKind::syntax, "empty expression");
    NodePtr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail(ErrorKind::syntax, std::string("unexpected '") + text_[pos_] + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(ErrorKind kind, const std::string& msg, std::size_t at) const {
    throw Error(kind, msg + " at byte offset " + std::to_string(at));
  }
  [[noreturn]] void fail(ErrorKind kind, const std::string& msg) const { fail(kind, msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
                                   text_[pos_] == '\r'))
      ++pos_;
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  static bool is_digit(char c) { return c >= '0' && c <= '9'; }
  static bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (peek('+')) {
        const auto at = pos_++;
        lhs = make_node({Op::add, {}, 0, lhs, term(), at});
      } else if (peek('-')) {
        const auto at = pos_++;
        lhs = make_node({Op::sub, {}, 0, lhs, term(), at});
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    for (;;) {
      if (peek('*')) {
        const auto at = pos_++;
        lhs = make_node({Op::mul, {}, 0, lhs, factor(), at});
      } else if (peek('/')) {
        const auto at = pos_++;
        lhs = make_node({Op::div, {}, 0, lhs, factor(), at});
      } else {
        return lhs;
      }
    }
  }

  NodePtr factor() {
    NodePtr base = unary();
    if (!peek('^')) return base;
    const auto at = pos_++;
    skip_ws();
    const auto start = pos_;
    bool negative = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      negative = text_[pos_] == '-';
      ++pos_;
    }
    if (pos_ >= text_.size() || !is_digit(text_[pos_])) fail(ErrorKind::non_integer_exponent, "exponent", start);
    const auto digits = pos_;
    while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
    if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E'))
      fail(ErrorKind::non_integer_exponent, "exponent", start);
    int n = 0;
    const auto [ptr, ec] = std::from_chars(text_.data() + digits, text_.data() + pos_, n);
    if (ec != std::errc()) fail(ErrorKind::non_integer_exponent, "exponent out of range", start);
    return make_node({Op::pow, {}, negative ? -n : n, base, nullptr, at});
  }

  NodePtr unary() {
    if (peek('-')) {
      const auto at = pos_++;
      return make_node({Op::neg, {}, 0, atom(), nullptr, at});
    }
    return atom();
  }

  NodePtr atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail(ErrorKind::syntax, "unexpected end of input");
    const auto at = pos_;
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      if (!peek(')')) fail(ErrorKind::syntax, "expected ')'");
      ++pos_;
      return e;
    }
    if (is_digit(c) || c == '.') return number();
    if (is_alpha(c)) {
      while (pos_ < text_.size() && (is_alpha(text_[pos_]) || is_digit(text_[pos_]))) ++pos_;
      const std::string_view ident = text_.substr(at, pos_ - at);
      for (std::size_t k = 0; k < names_.size(); ++k)
        if (ident == names_[k]) return variable(static_cast<int>(k), at);
      if (ident == "i") return constant(Complex(0.0, 1.0), at);
      Op op;
      if (ident == "exp") op = Op::exp;
      else if (ident == "sin") op = Op::sin;
      else if (ident == "cos") op = Op::cos;
      else if (ident == "sinh") op = Op::sinh;
      else if (ident == "cosh") op = Op::cosh;
      else if (peek('('))
        fail(ErrorKind::unknown_function, "'" + std::string(ident) + "'", at);
      else
        fail(ErrorKind::syntax, "unknown identifier '" + std::string(ident) + "'", at);
      if (!peek('(')) fail(ErrorKind::syntax, "expected '(' after " + std::string(ident));
      ++pos_;
      NodePtr arg = expr();
      if (!peek(')')) fail(ErrorKind::syntax, "expected ')'");
      ++pos_;
      return make_node({op, {}, 0, arg, nullptr, at});
    }
    fail(ErrorKind::syntax, std::string("unexpected '") + c + "'");
  }

  NodePtr number() {
    const auto at = pos_;
    while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t k = pos_ + 1;
      if (k < text_.size() && (text_[k] == '+' || text_[k] == '-')) ++k;
      if (k < text_.size() && is_digit(text_[k])) {
        pos_ = k;
        while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
      }
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text_.data() + at, text_.data() + pos_, v);
    if (ec != std::errc() || ptr != text_.data() + pos_ || !std::isfinite(v))
      fail(ErrorKind::syntax, "malformed number", at);
    return constant(v, at);
  }

  std::string_view text_;
  const std::vector<std::string>& names_;
  std::size_t pos_ = 0;
};

}  // namespace expr_detail

/// Immutable expression tree in one or more complex variables. The default
/// (and for holomorphic data, only) variable is `z`.
class Expr {
 public:
  using NodePtr = expr_detail::NodePtr;

  Expr() : Expr(expr_detail::constant(0.0), default_names()) {}

  static Expr parse(std::string_view text, std::vector<std::string> variables = {"z"}) {
    auto names = std::make_shared<const std::vector<std::string>>(std::move(variables));
    expr_detail::Parser p(text, *names);
    Expr e(p.parse(), std::move(names));
    e.source_ = std::string(text);
    return e;
  }

  static Expr constant(Complex c) { return Expr(expr_detail::constant(c), default_names()); }
  static Expr variable() { return Expr(expr_detail::variable(0), default_names()); }

  Complex eval(std::span<const Complex> vars) const {
    if (vars.size() != names_->size())
      throw Error(ErrorKind::dimension, "expression expects " + std::to_string(names_->size()) + " variables");
    for (Complex v : vars)
      if (!is_finite(v)) throw Error(ErrorKind::precondition, "non-finite argument");
    const Complex out = expr_detail::eval(*root_, vars);
    if (!is_finite(out)) throw Error(ErrorKind::evaluation, "non-finite value of " + print());
    return out;
  }
  Complex eval(Complex z) const { return eval(std::span<const Complex>(&z, 1)); }
  Complex operator()(Complex z) const { return eval(z); }

  /// Exact symbolic derivative with respect to variable `var`.
  Expr derive(int var = 0) const { return Expr(expr_detail::derive(root_, var), names_); }

  std::string print() const { return expr_detail::print(*root_, *names_); }

  /// Text the expression was parsed from; printed form for built expressions.
  std::string source() const { return source_.empty() ? print() : source_; }
  const std::vector<std::string>& variables() const { return *names_; }
  const expr_detail::Node& root() const { return *root_; }

  bool mentions_variable() const { return expr_detail::mentions_variable(*root_); }
  bool is_literal_zero() const { return expr_detail::is_const(root_, 0.0); }
  bool is_literal_constant() const { return expr_detail::is_const(root_); }

  friend bool operator==(const Expr& a, const Expr& b) {
    return *a.names_ == *b.names_ && expr_detail::equal(*a.root_, *b.root_);
  }

  friend Expr operator+(const Expr& a, const Expr& b) { return a.combine(expr_detail::add(a.root_, b.root_)); }
  friend Expr operator-(const Expr& a, const Expr& b) { return a.combine(expr_detail::sub(a.root_, b.root_)); }
  friend Expr operator*(const Expr& a, const Expr& b) { return a.combine(expr_detail::mul(a.root_, b.root_)); }
  friend Expr operator/(const Expr& a, const Expr& b) { return a.combine(expr_detail::div(a.root_, b.root_)); }
  friend Expr operator*(Complex k, const Expr& a) { return a.combine(expr_detail::mul(expr_detail::constant(k), a.root_)); }
  friend Expr operator-(const Expr& a) { return a.combine(expr_detail::neg(a.root_)); }
  friend Expr exp(const Expr& a) { return a.combine(expr_detail::func(expr_detail::Op::exp, a.root_)); }
  friend Expr sin(const Expr& a) { return a.combine(expr_detail::func(expr_detail::Op::sin, a.root_)); }
  friend Expr cos(const Expr& a) { return a.combine(expr_detail::func(expr_detail::Op::cos, a.root_)); }
  friend Expr sinh(const Expr& a) { return a.combine(expr_detail::func(expr_detail::Op::sinh, a.root_)); }
  friend Expr cosh(const Expr& a) { return a.combine(expr_detail::func(expr_detail::Op::cosh, a.root_)); }
  friend Expr pow(const Expr& a, int n) { return a.combine(expr_detail::pow(a.root_, n)); }

 private:
  Expr(NodePtr root, std::shared_ptr<const std::vector<std::string>> names)
      : root_(std::move(root)), names_(std::move(names)) {}

  static std::shared_ptr<const std::vector<std::string>> default_names() {
    static const auto names = std::make_shared<const std::vector<std::string>>(std::vector<std::string>{"z"});
    return names;
  }
  Expr combine(NodePtr n) const { return Expr(std::move(n), names_); }

  NodePtr root_;
  std::shared_ptr<const std::vector<std::string>> names_;
  std::string source_;
};

/// Expression in the single complex variable z.
using HoloExpr = Expr;

inline HoloExpr parse(std::string_view text) { return Expr::parse(text); }
inline Complex eval(const HoloExpr& e, Complex z) { return e.eval(z); }
inline HoloExpr derive(const HoloExpr& e) { return e.derive(0); }
inline std::string print(const HoloExpr& e) { return e.print(); }

/// Integral of a one-variable expression along the segment [z0, z1] by
/// adaptive Gauss-Legendre; `tol` bounds the absolute error estimate.
inline Complex integrate_segment(const HoloExpr& e, Complex z0, Complex z1, double tol = 1e-12) {
  if (!(tol > 0.0)) throw Error(ErrorKind::precondition, "tolerance must be positive");
  if (!is_finite(z0) || !is_finite(z1)) throw Error(ErrorKind::precondition, "non-finite endpoint");
  const Complex dz = z1 - z0;
  if (dz == 0.0) return 0.0;
  const double scale = std::abs(dz);
  auto r = quad::integrate([&](double t) { return e.eval(z0 + t * dz); }, 0.0, 1.0, tol / scale);
  return r.value * dz;
}

}  // namespace stationary
