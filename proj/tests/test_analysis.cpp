#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "geomlab/analysis.hpp"
#include "geomlab/spec_io.hpp"
#include "geomlab/zoo.hpp"

using namespace geomlab;

namespace {

AnalysisReport run_zoo(const std::string& name, int m) {
  MetricSpec spec = zoo::instantiate(name, m);
  auto adapted = zoo::adapted(name, m);
  return full_report(spec, adapted ? &*adapted : nullptr);
}

}  // namespace

TEST_CASE("Klein model: full verdict chain holds in dimensions 2..4") {
  for (int m : {2, 3, 4}) {
    CAPTURE(m);
    AnalysisReport r = run_zoo("klein_hyperbolic", m);
    REQUIRE(r.errors.empty());
    CHECK(r.extension_test.passes);
    CHECK(r.connection_nonextension.gamma_diverges);
    CHECK(r.scalar_boundary.extends);
    CHECK(r.scalar_boundary.locally_constant);
    CHECK(r.scalar_boundary.nowhere_vanishing);
    double want_S = -static_cast<double>(m) * (m - 1);
    for (double v : r.scalar_boundary.values)
      CHECK(v == doctest::Approx(want_S).epsilon(1e-4));
    CHECK(r.main_theorem.hypotheses[0]);
    CHECK(r.main_theorem.hypotheses[1]);
    CHECK(r.main_theorem.hypotheses[2]);
    REQUIRE(r.main_theorem.order.ok);
    CHECK(r.main_theorem.order.k == 1);
    CHECK(r.main_theorem.order.alpha == doctest::Approx(2.0));
    CHECK(r.main_theorem.conclusion_order2);
    CHECK(r.main_theorem.direct_route_extends);
    CHECK(r.main_theorem.routes_consistent);
    REQUIRE(r.asymptotics.available);
    CHECK(r.asymptotics.C_measured == doctest::Approx(0.25).epsilon(0.01));
    CHECK(r.asymptotics.C_predicted == doctest::Approx(0.25).epsilon(0.01));
    CHECK(r.asymptotics.tracefree_ricci_extends);
    CHECK(r.asymptotics.max_tracefree_ricci < 1e-9);  // Einstein
  }
}

TEST_CASE("de Sitter model: positive scalar curvature chain in dimension 3") {
  AnalysisReport r = run_zoo("klein_de_sitter", 3);
  REQUIRE(r.errors.empty());
  CHECK(r.extension_test.passes);
  CHECK(r.connection_nonextension.gamma_diverges);
  CHECK(r.scalar_boundary.extends);
  for (double v : r.scalar_boundary.values)
    CHECK(v == doctest::Approx(6.0).epsilon(1e-4));
  CHECK(r.main_theorem.hypotheses == std::array<bool, 3>{true, true, true});
  REQUIRE(r.main_theorem.order.ok);
  CHECK(r.main_theorem.order.k == 1);
  CHECK(r.main_theorem.order.alpha == doctest::Approx(2.0));
  CHECK(r.main_theorem.conclusion_order2);
  REQUIRE(r.asymptotics.available);
  CHECK(r.asymptotics.C_measured == doctest::Approx(-0.25).epsilon(0.01));
}

TEST_CASE("flat chart near projective infinity: vanishing scalar curvature") {
  AnalysisReport r = run_zoo("flat_projective_infinity", 3);
  REQUIRE(r.errors.empty());
  CHECK(r.extension_test.passes);               // hypothesis 1 holds
  CHECK(r.connection_nonextension.gamma_diverges);  // hypothesis 2 holds
  CHECK(r.scalar_boundary.extends);
  CHECK_FALSE(r.scalar_boundary.nowhere_vanishing);  // S = 0: hypothesis 3 fails
  CHECK_FALSE(r.main_theorem.hypotheses[2]);
  REQUIRE(r.main_theorem.order.ok);
  CHECK(r.main_theorem.order.k == 2);
  CHECK(r.main_theorem.order.alpha == doctest::Approx(1.0));
  CHECK_FALSE(r.main_theorem.conclusion_order2);
}

TEST_CASE("Poincare ball: projective extension fails with rate 1") {
  AnalysisReport r = run_zoo("poincare_hyperbolic", 3);
  CHECK_FALSE(r.extension_test.passes);
  CHECK(r.extension_test.worst_divergence_rate == doctest::Approx(1.0).epsilon(0.05));
  CHECK_FALSE(r.main_theorem.conclusion_order2);
}

TEST_CASE("normal-form non-Einstein metric: C and S_boundary match the identity") {
  MetricSpec spec = zoo::instantiate("normal_form_non_einstein", 3);
  AnalysisReport r = full_report(spec);
  REQUIRE(r.errors.empty());
  REQUIRE(r.asymptotics.available);
  double C = 0.25;  // default parameter
  CHECK(r.asymptotics.C_measured == doctest::Approx(C).epsilon(0.01));
  CHECK(r.scalar_boundary.extends);
  double n = spec.n();
  double want_S = -n * (n + 1.0) / (4.0 * C);
  for (double v : r.scalar_boundary.values)
    CHECK(v == doctest::Approx(want_S).epsilon(0.01));
  // prediction closes the loop: C_predicted from measured S equals C
  CHECK(r.asymptotics.C_predicted == doctest::Approx(C).epsilon(0.01));
  // non-Einstein interior but trace-free Ricci still extends
  CHECK(r.asymptotics.max_tracefree_ricci > 1e-3);
  CHECK(r.asymptotics.tracefree_ricci_extends);
  CHECK(r.asymptotics.ricci_diverges);
  CHECK(r.asymptotics.ricci_divergence_rate == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("boundary conformal class is invariant under defining-density rescaling") {
  auto adapted = zoo::adapted("klein_hyperbolic", 3);
  REQUIRE(adapted.has_value());
  // u depends on boundary coordinates only
  ExprPtr u = parse("0.3 * sin(x1) + 0.1 * x2", adapted->coords, {});
  auto result = conformal_class_invariance(*adapted, u);
  CHECK(result.max_deviation_from_expected < 1e-3);
  CHECK(result.max_ratio_spread < 1e-3);

  ExprPtr bad = parse("x0 + x1", adapted->coords, {});
  CHECK_THROWS_AS(conformal_class_invariance(*adapted, bad), std::runtime_error);
}

TEST_CASE("report serialization is deterministic") {
  AnalysisReport r = run_zoo("klein_hyperbolic", 2);
  std::string a = dump_json(report_to_json(r));
  AnalysisReport r2 = run_zoo("klein_hyperbolic", 2);
  std::string b = dump_json(report_to_json(r2));
  CHECK(a == b);
  CHECK(!a.empty());
}

TEST_CASE("full_report records stage errors instead of aborting") {
  MetricSpec spec = zoo::instantiate("klein_hyperbolic", 2);
  spec.boundary_samples.clear();
  AnalysisReport r = full_report(spec);
  // no rays: every boundary stage is either skipped or recorded
  CHECK(r.metric_name == spec.name);
}

TEST_CASE("zoo expected values carry provenance notes") {
  for (const auto& name : zoo::list()) {
    auto e = zoo::expected(name, 3);
    CHECK(!e.provenance.empty());
  }
}
