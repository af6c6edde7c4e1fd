#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "geomlab/tractor.hpp"
#include "geomlab/zoo.hpp"

using namespace geomlab;

namespace {

Vector interior_point(const MetricSpec& spec, double t = 0.3) {
  auto rays = boundary_rays(spec);
  return rays.front().at(t);
}

}  // namespace

TEST_CASE("determinant identity det(L) = sgn(det g) S / (n(n+1))") {
  for (const char* name : {"klein_hyperbolic", "klein_de_sitter"}) {
    for (int m : {2, 3}) {
      MetricSpec spec = zoo::instantiate(name, m);
      for (double t : {0.4, 0.15, 0.05}) {
        Vector x = interior_point(spec, t);
        TractorS2 L = build_L(spec, x);
        auto det = tractor_det(L, spec, x);
        CHECK(std::abs(det.det - det.predicted) <
              1e-8 * std::max(1.0, std::abs(det.predicted)));
      }
    }
  }
}

TEST_CASE("Phi is the pointwise inverse of L") {
  for (const char* name : {"klein_hyperbolic", "klein_de_sitter"}) {
    MetricSpec spec = zoo::instantiate(name, 3);
    for (double t : {0.5, 0.1, 0.02}) {
      Vector x = interior_point(spec, t);
      TractorS2 L = build_L(spec, x);
      TractorS2Dual Phi = build_Phi(spec, x);
      CHECK(inverse_check(L, Phi) < 1e-9);
    }
  }
}

TEST_CASE("Klein m = 2 pinned values at the origin-side point") {
  // At x = (0.5, 0): tau = 0.75, S = -2, n(n+1) = 2, so
  // Phi = (n(n+1) tau / S, 0, tau g_ij) = (-0.75, 0, diag(4/3, 1)).
  MetricSpec spec = zoo::instantiate("klein_hyperbolic", 2);
  Vector x(2);
  x << 0.5, 0.0;
  TractorS2Dual Phi = build_Phi(spec, x);
  CHECK(Phi.top == doctest::Approx(-0.75).epsilon(1e-10));
  CHECK(Phi.middle.cwiseAbs().maxCoeff() < 1e-12);
  CHECK(Phi.bottom(0, 0) == doctest::Approx(4.0 / 3.0).epsilon(1e-10));
  CHECK(Phi.bottom(1, 1) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(Phi.bottom(0, 1)) < 1e-12);

  TractorS2 L = build_L(spec, x);
  CHECK(L.bottom == doctest::Approx(-4.0 / 3.0).epsilon(1e-10));
  CHECK(L.top(0, 0) == doctest::Approx(0.75).epsilon(1e-10));
  CHECK(L.top(1, 1) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("build_Phi rejects vanishing scalar curvature") {
  MetricSpec spec = zoo::instantiate("flat_projective_infinity", 3);
  Vector x = interior_point(spec, 0.3);
  CHECK_THROWS_AS(build_Phi(spec, x), std::runtime_error);
}

TEST_CASE("splitting change with signs (1,1,1) preserves the determinant") {
  MetricSpec spec = zoo::instantiate("klein_hyperbolic", 3);
  Vector x = interior_point(spec, 0.25);
  TractorS2Dual Phi = build_Phi(spec, x);
  double det0 = assemble(Phi).determinant();

  std::mt19937 rng(99);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    Vector upsilon(3);
    for (int i = 0; i < 3; ++i) upsilon(i) = normal(rng);
    TractorS2Dual changed = change_splitting(Phi, upsilon);
    CHECK(std::abs(assemble(changed).determinant() - det0) <
          1e-9 * std::max(1.0, std::abs(det0)));
  }
}

TEST_CASE("wrong quadratic-term sign breaks determinant invariance") {
  MetricSpec spec = zoo::instantiate("klein_hyperbolic", 3);
  Vector x = interior_point(spec, 0.25);
  TractorS2Dual Phi = build_Phi(spec, x);
  double det0 = assemble(Phi).determinant();

  SplittingSigns bad;
  bad.s3 = -1.0;
  Vector upsilon(3);
  upsilon << 0.8, -0.4, 0.3;
  TractorS2Dual changed = change_splitting(Phi, upsilon, bad);
  CHECK(std::abs(assemble(changed).determinant() - det0) >
        1e-4 * std::max(1.0, std::abs(det0)));
}

TEST_CASE("assembled form is symmetric with the expected block layout") {
  MetricSpec spec = zoo::instantiate("klein_hyperbolic", 3);
  Vector x = interior_point(spec, 0.3);
  TractorS2 L = build_L(spec, x);
  Matrix A = assemble(L);
  REQUIRE(A.rows() == 4);
  CHECK((A - A.transpose()).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(A.topLeftCorner(3, 3).isApprox(L.top, 1e-14));
  CHECK(A(3, 3) == L.bottom);
}

TEST_CASE("phi middle slot vanishes against the top-slot gradient at the boundary") {
  MetricSpec spec = zoo::instantiate("klein_hyperbolic", 3);
  auto rays = boundary_rays(spec);
  auto result = phi_middle_slot_check(spec, rays);
  CHECK(result.max_residual < 1e-5);
}
