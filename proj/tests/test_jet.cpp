#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "geomlab/expr.hpp"
#include "geomlab/jet.hpp"

using namespace geomlab;

namespace {

const std::vector<std::string> kCoords{"x0", "x1", "x2"};
const std::map<std::string, double> kNoParams;

Jet2 jet_of(const std::string& src, const std::vector<double>& pt) {
  ExprPtr ast = parse(src, kCoords, {});
  std::vector<Jet2> seeds = Jet2::seeds(pt);
  return eval<Jet2>(*ast, seeds, kNoParams);
}

double value_of(const std::string& src, std::vector<double> pt) {
  return eval_at(*parse(src, kCoords, {}), pt, kNoParams);
}

// Central finite differences of the plain-double evaluation.
double fd_grad(const std::string& src, std::vector<double> pt, int i,
               double h = 1e-6) {
  auto plus = pt, minus = pt;
  plus[i] += h;
  minus[i] -= h;
  return (value_of(src, plus) - value_of(src, minus)) / (2.0 * h);
}

double fd_hess(const std::string& src, std::vector<double> pt, int i, int j,
               double h = 1e-4) {
  if (i == j) {
    auto plus = pt, minus = pt;
    plus[i] += h;
    minus[i] -= h;
    return (value_of(src, plus) - 2.0 * value_of(src, pt) + value_of(src, minus)) /
           (h * h);
  }
  auto pp = pt, pm = pt, mp = pt, mm = pt;
  pp[i] += h; pp[j] += h;
  pm[i] += h; pm[j] -= h;
  mp[i] -= h; mp[j] += h;
  mm[i] -= h; mm[j] -= h;
  return (value_of(src, pp) - value_of(src, pm) - value_of(src, mp) +
          value_of(src, mm)) /
         (4.0 * h * h);
}

}  // namespace

TEST_CASE("jet evaluation agrees with finite differences") {
  const char* sources[] = {
      "x0 * x1 + x2 ^ 3",
      "sin(x0) * cos(x1) * exp(x2 / 4)",
      "sqrt(1 + x0 ^ 2 + x1 ^ 2)",
      "log(2 + x0) / (1 + x1 * x2)",
      "tanh(x0 - x1) + abs(2 + x2)",
      "(x0 + x1 + x2) ^ -2",
      "x0 ^ 2.5 + 1 / (x1 + 3)",
  };
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> unif(0.3, 1.4);
  for (const auto* src : sources) {
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<double> pt{unif(rng), unif(rng), unif(rng)};
      Jet2 j = jet_of(src, pt);
      CHECK(j.value() == doctest::Approx(value_of(src, pt)).epsilon(1e-12));
      for (int i = 0; i < 3; ++i) {
        CHECK(j.grad()(i) ==
              doctest::Approx(fd_grad(src, pt, i)).epsilon(1e-5).scale(1.0));
        for (int k = i; k < 3; ++k) {
          CHECK(j.hess(i, k) ==
                doctest::Approx(fd_hess(src, pt, i, k)).epsilon(1e-5).scale(1.0));
        }
      }
    }
  }
}

TEST_CASE("algebraic identities hold to machine precision") {
  std::vector<double> pt{0.7, 1.2, 0.4};
  Jet2 x = jet_of("x0", pt), y = jet_of("x1", pt), z = jet_of("x2", pt);

  auto close = [](const Jet2& a, const Jet2& b) {
    CHECK(a.value() == doctest::Approx(b.value()).epsilon(1e-12));
    CHECK((a.grad() - b.grad()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((a.hess_matrix() - b.hess_matrix()).cwiseAbs().maxCoeff() < 1e-12);
  };

  SUBCASE("product rule consistency: (x+y)^2 = x^2 + 2xy + y^2") {
    Jet2 lhs = (x + y) * (x + y);
    Jet2 rhs = x * x + 2.0 * (x * y) + y * y;
    close(lhs, rhs);
  }
  SUBCASE("division inverts multiplication") {
    Jet2 w = sin_s(x) * exp_s(y) + scalar_like(x, 2.0);
    close((w * z) / z, w);
  }
  SUBCASE("log(exp(x)) is the identity jet") {
    close(log_checked(exp_s(x)), x);
  }
  SUBCASE("sqrt(x)^2 recovers x") {
    Jet2 s = sqrt_checked(x);
    close(s * s, x);
  }
  SUBCASE("pythagorean identity is the constant jet 1") {
    Jet2 one = sin_s(x) * sin_s(x) + cos_s(x) * cos_s(x);
    close(one, scalar_like(x, 1.0));
  }
  SUBCASE("integer power by squaring matches repeated product") {
    Jet2 p = pow_integer(x + y, 5L);
    Jet2 q = (x + y) * (x + y) * (x + y) * (x + y) * (x + y);
    close(p, q);
  }
}

TEST_CASE("seeds carry the identity Jacobian and zero Hessian") {
  std::vector<double> pt{0.25, -1.5, 3.0};
  auto seeds = Jet2::seeds(pt);
  for (int i = 0; i < 3; ++i) {
    CHECK(seeds[i].value() == pt[static_cast<std::size_t>(i)]);
    for (int j = 0; j < 3; ++j) {
      CHECK(seeds[i].grad()(j) == (i == j ? 1.0 : 0.0));
      for (int k = j; k < 3; ++k) CHECK(seeds[i].hess(j, k) == 0.0);
    }
  }
}

TEST_CASE("singular operations throw") {
  std::vector<double> pt{0.0, -1.0, 0.5};
  Jet2 x = jet_of("x0", pt);  // value 0
  Jet2 y = jet_of("x1", pt);  // value -1
  CHECK_THROWS_AS(recip_jet(x), DomainError);
  CHECK_THROWS_AS(sqrt_checked(y), DomainError);
  CHECK_THROWS_AS(sqrt_checked(x), DomainError);  // derivative blows up at 0
  CHECK_THROWS_AS(log_checked(x), DomainError);
  CHECK_THROWS_AS(abs_checked(x), DomainError);
}
