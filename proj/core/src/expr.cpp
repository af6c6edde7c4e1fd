#include "geomlab/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace geomlab {

ExprPtr ExprAst::constant(double v) {
  auto n = std::make_shared<ExprAst>();
  n->kind = Kind::Constant;
  n->value = v;
  return n;
}

ExprPtr ExprAst::coordinate(int index) {
  auto n = std::make_shared<ExprAst>();
  n->kind = Kind::Coord;
  n->coord = index;
  return n;
}

ExprPtr ExprAst::parameter(std::string name) {
  auto n = std::make_shared<ExprAst>();
  n->kind = Kind::Param;
  n->param = std::move(name);
  return n;
}

ExprPtr ExprAst::unary(UnaryOp op, ExprPtr child) {
  // fold -constant so pow exponents like 2^-3 stay constant nodes
  if (op == UnaryOp::Neg && child->kind == ExprAst::Kind::Constant)
    return constant(-child->value);
  auto n = std::make_shared<ExprAst>();
  n->kind = Kind::Unary;
  n->uop = op;
  n->a = std::move(child);
  return n;
}

ExprPtr ExprAst::binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs) {
  // fold constant^constant so chained exponents like 2^3^2 keep the
  // outer exponent a constant node
  if (op == BinaryOp::Pow && lhs->kind == Kind::Constant &&
      rhs->kind == Kind::Constant) {
    long ie = 0;
    if (detail::integral_exponent(rhs->value, ie))
      return constant(pow_integer(lhs->value, ie));
    if (lhs->value > 0.0) return constant(std::pow(lhs->value, rhs->value));
  }
  auto n = std::make_shared<ExprAst>();
  n->kind = Kind::Binary;
  n->bop = op;
  n->a = std::move(lhs);
  n->b = std::move(rhs);
  return n;
}

namespace {

struct Parser {
  const std::string& src;
  std::size_t pos = 0;
  const std::vector<std::string>& coords;
  const std::vector<std::string>& params;

  void skip_ws() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  }

  bool at_end() {
    skip_ws();
    return pos >= src.size();
  }

  char peek() {
    skip_ws();
    return pos < src.size() ? src[pos] : '\0';
  }

  bool consume(char c) {
    skip_ws();
    if (pos < src.size() && src[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) { throw ParseError(what, pos); }

  ExprPtr parse_sum() {
    ExprPtr lhs = parse_term();
    for (;;) {
      if (consume('+')) {
        lhs = ExprAst::binary(BinaryOp::Add, lhs, parse_term());
      } else if (consume('-')) {
        lhs = ExprAst::binary(BinaryOp::Sub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr parse_term() {
    ExprPtr lhs = parse_unary();
    for (;;) {
      if (consume('*')) {
        lhs = ExprAst::binary(BinaryOp::Mul, lhs, parse_unary());
      } else if (consume('/')) {
        lhs = ExprAst::binary(BinaryOp::Div, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr parse_unary() {
    if (consume('-')) return ExprAst::unary(UnaryOp::Neg, parse_unary());
    return parse_power();
  }

  ExprPtr parse_power() {
    ExprPtr base = parse_primary();
    if (consume('^')) {
      ExprPtr expo = parse_unary();  // right-associative, binds above unary minus
      if (expo->kind != ExprAst::Kind::Constant)
        fail("pow exponent must be a constant");
      return ExprAst::binary(BinaryOp::Pow, base, expo);
    }
    return base;
  }

  ExprPtr parse_primary() {
    skip_ws();
    if (pos >= src.size()) fail("unexpected end of input");
    char c = src[pos];
    if (c == '(') {
      ++pos;
      ExprPtr inner = parse_sum();
      if (!consume(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    fail(std::string("unexpected character '") + c + "'");
  }

  ExprPtr parse_number() {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(src.data() + pos, src.data() + src.size(), v);
    if (ec != std::errc{}) fail("malformed number literal");
    pos = static_cast<std::size_t>(ptr - src.data());
    return ExprAst::constant(v);
  }

  ExprPtr parse_identifier() {
    std::size_t start = pos;
    while (pos < src.size() &&
           (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
      ++pos;
    std::string name = src.substr(start, pos - start);

    static const std::pair<const char*, UnaryOp> functions[] = {
        {"sqrt", UnaryOp::Sqrt}, {"exp", UnaryOp::Exp}, {"log", UnaryOp::Log},
        {"sin", UnaryOp::Sin},   {"cos", UnaryOp::Cos}, {"tanh", UnaryOp::Tanh},
        {"abs", UnaryOp::Abs}};
    for (const auto& [fname, op] : functions) {
      if (name == fname) {
        if (!consume('(')) fail("expected '(' after function name " + name);
        ExprPtr arg = parse_sum();
        if (!consume(')')) fail("expected ')'");
        return ExprAst::unary(op, arg);
      }
    }

    auto cit = std::find(coords.begin(), coords.end(), name);
    if (cit != coords.end())
      return ExprAst::coordinate(static_cast<int>(cit - coords.begin()));
    if (std::find(params.begin(), params.end(), name) != params.end())
      return ExprAst::parameter(name);
    throw ParseError("unknown identifier '" + name + "'", start);
  }
};

const char* unary_name(UnaryOp op) {
  switch (op) {
    case UnaryOp::Neg: return "-";
    case UnaryOp::Sqrt: return "sqrt";
    case UnaryOp::Exp: return "exp";
    case UnaryOp::Log: return "log";
    case UnaryOp::Sin: return "sin";
    case UnaryOp::Cos: return "cos";
    case UnaryOp::Tanh: return "tanh";
    case UnaryOp::Abs: return "abs";
  }
  return "?";
}

char binary_symbol(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return '+';
    case BinaryOp::Sub: return '-';
    case BinaryOp::Mul: return '*';
    case BinaryOp::Div: return '/';
    case BinaryOp::Pow: return '^';
  }
  return '?';
}

void print_rec(const ExprAst& ast, std::ostringstream& out,
               const std::vector<std::string>* coord_names) {
  switch (ast.kind) {
    case ExprAst::Kind::Constant: {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.17g", ast.value);
      if (ast.value < 0.0) {
        out << "(" << buf << ")";
      } else {
        out << buf;
      }
      return;
    }
    case ExprAst::Kind::Coord:
      if (coord_names && ast.coord >= 0 &&
          static_cast<std::size_t>(ast.coord) < coord_names->size()) {
        out << (*coord_names)[static_cast<std::size_t>(ast.coord)];
      } else {
        out << "x" << ast.coord;
      }
      return;
    case ExprAst::Kind::Param:
      out << ast.param;
      return;
    case ExprAst::Kind::Unary:
      if (ast.uop == UnaryOp::Neg) {
        out << "(-";
        print_rec(*ast.a, out, coord_names);
        out << ")";
      } else {
        out << unary_name(ast.uop) << "(";
        print_rec(*ast.a, out, coord_names);
        out << ")";
      }
      return;
    case ExprAst::Kind::Binary:
      out << "(";
      print_rec(*ast.a, out, coord_names);
      out << binary_symbol(ast.bop);
      print_rec(*ast.b, out, coord_names);
      out << ")";
      return;
  }
}

}  // namespace

ExprPtr parse(const std::string& source, const std::vector<std::string>& coords,
              const std::vector<std::string>& params) {
  if (source.empty()) throw ParseError("empty expression", 0);
  Parser p{source, 0, coords, params};
  ExprPtr ast = p.parse_sum();
  if (!p.at_end()) p.fail("trailing input");
  return ast;
}

std::string print(const ExprAst& ast) {
  std::ostringstream out;
  print_rec(ast, out, nullptr);
  return out.str();
}

std::string print(const ExprAst& ast, const std::vector<std::string>& coord_names) {
  std::ostringstream out;
  print_rec(ast, out, &coord_names);
  return out.str();
}

bool structurally_equal(const ExprAst& lhs, const ExprAst& rhs) {
  if (lhs.kind != rhs.kind) return false;
  switch (lhs.kind) {
    case ExprAst::Kind::Constant: return lhs.value == rhs.value;
    case ExprAst::Kind::Coord: return lhs.coord == rhs.coord;
    case ExprAst::Kind::Param: return lhs.param == rhs.param;
    case ExprAst::Kind::Unary:
      return lhs.uop == rhs.uop && structurally_equal(*lhs.a, *rhs.a);
    case ExprAst::Kind::Binary:
      return lhs.bop == rhs.bop && structurally_equal(*lhs.a, *rhs.a) &&
             structurally_equal(*lhs.b, *rhs.b);
  }
  return false;
}

}  // namespace geomlab
