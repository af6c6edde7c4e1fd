#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace geomlab {

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

class DomainError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class UnaryOp { Neg, Sqrt, Exp, Log, Sin, Cos, Tanh, Abs };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };

struct ExprAst;
using ExprPtr = std::shared_ptr<const ExprAst>;

/// Immutable expression tree over declared coordinates and named parameters.
struct ExprAst {
  enum class Kind { Constant, Coord, Param, Unary, Binary };

  Kind kind;
  double value = 0.0;      // Constant
  int coord = -1;          // Coord
  std::string param;       // Param
  UnaryOp uop{};           // Unary
  BinaryOp bop{};          // Binary
  ExprPtr a, b;            // children (Unary uses a only)

  static ExprPtr constant(double v);
  static ExprPtr coordinate(int index);
  static ExprPtr parameter(std::string name);
  static ExprPtr unary(UnaryOp op, ExprPtr child);
  static ExprPtr binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs);
};

/// Parses an infix expression. Precedence: ^ > unary minus > * / > + -,
/// left-associative except ^ (right-associative). pow exponents must be
/// constants after folding a leading minus.
ExprPtr parse(const std::string& source, const std::vector<std::string>& coords,
              const std::vector<std::string>& params);

/// Fully parenthesized rendering; parse(print(ast)) reproduces the tree.
/// Coordinates render as "x<i>" unless names are supplied.
std::string print(const ExprAst& ast);
std::string print(const ExprAst& ast, const std::vector<std::string>& coord_names);

bool structurally_equal(const ExprAst& lhs, const ExprAst& rhs);

// ---------------------------------------------------------------------------
// Generic evaluation. The scalar algebra S must provide the arithmetic
// operators and the unary functions below; doubles use the inline overloads
// here, jets provide their own in jet.hpp.
// ---------------------------------------------------------------------------

inline double scalar_like(double /*exemplar*/, double v) { return v; }
inline double neg(double a) { return -a; }
inline double pow_const(double base, double expo) {
  if (base <= 0.0) throw DomainError("pow with non-integer exponent requires positive base");
  return std::pow(base, expo);
}
inline double sqrt_checked(double a) {
  if (a < 0.0) throw DomainError("sqrt of negative value");
  return std::sqrt(a);
}
inline double log_checked(double a) {
  if (a <= 0.0) throw DomainError("log of non-positive value");
  return std::log(a);
}
inline double recip(double a) {
  if (a == 0.0) throw DomainError("division by zero");
  return 1.0 / a;
}
inline double abs_checked(double a) { return std::abs(a); }
inline double sin_s(double a) { return std::sin(a); }
inline double cos_s(double a) { return std::cos(a); }
inline double exp_s(double a) { return std::exp(a); }
inline double tanh_s(double a) { return std::tanh(a); }

namespace detail {
inline bool integral_exponent(double e, long& out) {
  if (e != std::floor(e) || std::abs(e) > 64.0) return false;
  out = static_cast<long>(e);
  return true;
}
}  // namespace detail

template <class S>
S pow_integer(const S& base, long e) {
  S acc = scalar_like(base, 1.0);
  long k = e < 0 ? -e : e;
  S b = base;
  while (k > 0) {
    if (k & 1) acc = acc * b;
    b = b * b;
    k >>= 1;
  }
  if (e < 0) acc = scalar_like(base, 1.0) / acc;
  return acc;
}

template <class S>
S eval(const ExprAst& ast, std::span<const S> point,
       const std::map<std::string, double>& params) {
  switch (ast.kind) {
    case ExprAst::Kind::Constant:
      return scalar_like(point[0], ast.value);
    case ExprAst::Kind::Coord:
      if (ast.coord < 0 || static_cast<std::size_t>(ast.coord) >= point.size())
        throw DomainError("coordinate index out of range");
      return point[ast.coord];
    case ExprAst::Kind::Param: {
      auto it = params.find(ast.param);
      if (it == params.end()) throw DomainError("unbound parameter: " + ast.param);
      return scalar_like(point[0], it->second);
    }
    case ExprAst::Kind::Unary: {
      S x = eval(*ast.a, point, params);
      switch (ast.uop) {
        case UnaryOp::Neg: return neg(x);
        case UnaryOp::Sqrt: return sqrt_checked(x);
        case UnaryOp::Exp: return exp_s(x);
        case UnaryOp::Log: return log_checked(x);
        case UnaryOp::Sin: return sin_s(x);
        case UnaryOp::Cos: return cos_s(x);
        case UnaryOp::Tanh: return tanh_s(x);
        case UnaryOp::Abs: return abs_checked(x);
      }
      throw DomainError("bad unary op");
    }
    case ExprAst::Kind::Binary: {
      S x = eval(*ast.a, point, params);
      if (ast.bop == BinaryOp::Pow) {
        if (ast.b->kind != ExprAst::Kind::Constant)
          throw DomainError("pow exponent must be a constant");
        double e = ast.b->value;
        long ie = 0;
        if (detail::integral_exponent(e, ie)) return pow_integer(x, ie);
        return pow_const(x, e);
      }
      S y = eval(*ast.b, point, params);
      switch (ast.bop) {
        case BinaryOp::Add: return x + y;
        case BinaryOp::Sub: return x - y;
        case BinaryOp::Mul: return x * y;
        case BinaryOp::Div: return x * recip(y);
        default: break;
      }
      throw DomainError("bad binary op");
    }
  }
  throw DomainError("bad node kind");
}

inline double eval_at(const ExprAst& ast, std::span<const double> point,
                      const std::map<std::string, double>& params) {
  return eval<double>(ast, point, params);
}

}  // namespace geomlab
