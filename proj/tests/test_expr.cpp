#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "geomlab/expr.hpp"

using namespace geomlab;

namespace {

const std::vector<std::string> kCoords{"x0", "x1", "x2"};
const std::vector<std::string> kParams{"a", "c"};
const std::map<std::string, double> kParamValues{{"a", 1.5}, {"c", -0.25}};

double ev(const std::string& src, std::vector<double> pt) {
  return eval_at(*parse(src, kCoords, kParams), pt, kParamValues);
}

}  // namespace

TEST_CASE("literals, coordinates and parameters") {
  CHECK(ev("3.5", {0, 0, 0}) == doctest::Approx(3.5));
  CHECK(ev("x1", {1, 2, 3}) == doctest::Approx(2.0));
  CHECK(ev("a", {0, 0, 0}) == doctest::Approx(1.5));
  CHECK(ev("c", {0, 0, 0}) == doctest::Approx(-0.25));
  CHECK(ev("1e-2", {0, 0, 0}) == doctest::Approx(0.01));
}

TEST_CASE("precedence and associativity") {
  CHECK(ev("1 + 2 * 3", {0, 0, 0}) == doctest::Approx(7.0));
  CHECK(ev("(1 + 2) * 3", {0, 0, 0}) == doctest::Approx(9.0));
  CHECK(ev("2 ^ 3 ^ 2", {0, 0, 0}) == doctest::Approx(512.0));  // right-assoc
  CHECK(ev("8 / 4 / 2", {0, 0, 0}) == doctest::Approx(1.0));    // left-assoc
  CHECK(ev("1 - 2 - 3", {0, 0, 0}) == doctest::Approx(-4.0));
  CHECK(ev("-2 ^ 2", {0, 0, 0}) == doctest::Approx(-4.0));  // unary binds below ^
  CHECK(ev("2 * x0 ^ 2", {3, 0, 0}) == doctest::Approx(18.0));
}

TEST_CASE("functions") {
  CHECK(ev("sqrt(x0)", {4, 0, 0}) == doctest::Approx(2.0));
  CHECK(ev("exp(log(x0))", {2.5, 0, 0}) == doctest::Approx(2.5));
  CHECK(ev("sin(x0)^2 + cos(x0)^2", {0.7, 0, 0}) == doctest::Approx(1.0));
  CHECK(ev("tanh(x0)", {0.3, 0, 0}) == doctest::Approx(std::tanh(0.3)));
  CHECK(ev("abs(-x0)", {1.25, 0, 0}) == doctest::Approx(1.25));
  CHECK(ev("x0 ^ -2", {2, 0, 0}) == doctest::Approx(0.25));
  CHECK(ev("x0 ^ 0.5", {9, 0, 0}) == doctest::Approx(3.0));
}

TEST_CASE("parse errors carry a byte offset") {
  CHECK_THROWS_AS(parse("1 + ", kCoords, kParams), ParseError);
  CHECK_THROWS_AS(parse("x9", kCoords, kParams), ParseError);
  CHECK_THROWS_AS(parse("foo(x0)", kCoords, kParams), ParseError);
  CHECK_THROWS_AS(parse("x0 ^ x1", kCoords, kParams), ParseError);
  CHECK_THROWS_AS(parse("(x0", kCoords, kParams), ParseError);
  CHECK_THROWS_AS(parse("2 3", kCoords, kParams), ParseError);
  try {
    parse("1 + @", kCoords, kParams);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 4);
  }
}

TEST_CASE("unknown identifiers are named in the error") {
  try {
    parse("1 + bogus", kCoords, kParams);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("bogus") != std::string::npos);
  }
}

TEST_CASE("print/parse round trip is structural identity") {
  const char* sources[] = {
      "1 + 2 * x0 - x1 / x2",
      "-x0 ^ 2 + sqrt(x1) * log(x2)",
      "sin(x0) * cos(x1) + tanh(a * x2)",
      "abs(x0 - c) ^ 3",
      "(x0 + x1) ^ 2 / (1 - x2)",
      "exp(-(x0 ^ 2))",
  };
  for (const auto* src : sources) {
    ExprPtr ast = parse(src, kCoords, kParams);
    ExprPtr again = parse(print(*ast), kCoords, kParams);
    CHECK(structurally_equal(*ast, *again));
  }
}

TEST_CASE("randomized round-trip property") {
  std::mt19937 rng(20260825);
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  std::uniform_int_distribution<int> pick(0, 5);

  // random tree builder, depth-limited
  std::function<ExprPtr(int)> gen = [&](int depth) -> ExprPtr {
    if (depth == 0) {
      switch (pick(rng) % 3) {
        case 0: return ExprAst::constant(coef(rng));
        case 1: return ExprAst::coordinate(pick(rng) % 3);
        default: return ExprAst::parameter(pick(rng) % 2 ? "a" : "c");
      }
    }
    switch (pick(rng)) {
      case 0: return ExprAst::binary(BinaryOp::Add, gen(depth - 1), gen(depth - 1));
      case 1: return ExprAst::binary(BinaryOp::Sub, gen(depth - 1), gen(depth - 1));
      case 2: return ExprAst::binary(BinaryOp::Mul, gen(depth - 1), gen(depth - 1));
      case 3: return ExprAst::binary(BinaryOp::Div, gen(depth - 1), gen(depth - 1));
      case 4:
        return ExprAst::binary(BinaryOp::Pow, gen(depth - 1),
                               ExprAst::constant(static_cast<double>(pick(rng))));
      default: return ExprAst::unary(UnaryOp::Neg, gen(depth - 1));
    }
  };

  for (int trial = 0; trial < 200; ++trial) {
    ExprPtr ast = gen(3);
    ExprPtr again = parse(print(*ast), kCoords, kParams);
    CHECK(structurally_equal(*ast, *again));
  }
}

TEST_CASE("evaluation domain errors") {
  CHECK_THROWS_AS(ev("sqrt(-x0)", {1, 0, 0}), DomainError);
  CHECK_THROWS_AS(ev("log(x0)", {-1, 0, 0}), DomainError);
  CHECK_THROWS_AS(ev("1 / x0", {0, 0, 0}), DomainError);
  CHECK_THROWS_AS(ev("(-x0) ^ 0.5", {2, 0, 0}), DomainError);
}

TEST_CASE("evaluation matches hand-computed values at random points") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> unif(0.2, 1.8);
  for (int trial = 0; trial < 50; ++trial) {
    double x = unif(rng), y = unif(rng), z = unif(rng);
    double expected = (1.0 + x * x) / (y + z) - 1.5 * std::sin(y) * std::exp(-z);
    CHECK(ev("(1 + x0^2) / (x1 + x2) - a * sin(x1) * exp(-x2)", {x, y, z}) ==
          doctest::Approx(expected).epsilon(1e-12));
  }
}
