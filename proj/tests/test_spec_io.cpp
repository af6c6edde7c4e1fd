#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "geomlab/spec_io.hpp"
#include "geomlab/zoo.hpp"

using namespace geomlab;

namespace {

Json minimal_doc() {
  Json doc;
  doc["name"] = "flat-2d";
  doc["dimension"] = 2;
  doc["coordinates"] = {"x0", "x1"};
  doc["signature"] = {2, 0};
  doc["components"] = {{"1", "0"}, {"1"}};
  doc["defining_function"] = "x0";
  doc["boundary_chart"] = {"0", "u1"};
  doc["boundary_samples"] = {{0.3}, {-0.4}};
  return doc;
}

}  // namespace

TEST_CASE("loads a minimal valid spec") {
  MetricSpec spec = load_metric_spec(minimal_doc());
  CHECK(spec.name == "flat-2d");
  CHECK(spec.dim == 2);
  CHECK(spec.signature == std::pair<int, int>{2, 0});
  CHECK(spec.boundary_samples.size() == 2);
  Vector b = spec.boundary_point({0.3});
  CHECK(b(0) == doctest::Approx(0.0));
  CHECK(b(1) == doctest::Approx(0.3));
  CHECK(spec.defining_value(Vector::Constant(2, 0.7)) == doctest::Approx(0.7));
}

TEST_CASE("schema errors name the offending key") {
  auto expect_mentions = [](Json doc, const std::string& key) {
    try {
      load_metric_spec(doc);
      FAIL("expected SpecFileError for key ", key);
    } catch (const SpecFileError& e) {
      CHECK(std::string(e.what()).find(key) != std::string::npos);
    }
  };

  Json doc = minimal_doc();
  doc.erase("components");
  expect_mentions(doc, "components");

  doc = minimal_doc();
  doc.erase("defining_function");
  expect_mentions(doc, "defining_function");

  doc = minimal_doc();
  doc["signature"] = {1, 2};  // p + q != dim
  expect_mentions(doc, "signature");

  doc = minimal_doc();
  doc["components"] = {{"1"}, {"1"}};  // wrong triangle shape
  expect_mentions(doc, "components");

  doc = minimal_doc();
  doc["coordinates"] = {"x0"};
  expect_mentions(doc, "coordinates");

  doc = minimal_doc();
  doc["boundary_samples"] = {{0.3, 0.4}};  // tuple length must be dim-1
  expect_mentions(doc, "boundary_samples");

  doc = minimal_doc();
  doc["components"] = {{"1 + ", "0"}, {"1"}};  // parse error surfaces as SpecFileError
  expect_mentions(doc, "components");
}

TEST_CASE("spec round-trips through JSON") {
  for (const auto& name : zoo::list()) {
    MetricSpec spec = zoo::instantiate(name, 3);
    Json doc = metric_spec_to_json(spec);
    MetricSpec again = load_metric_spec(doc);
    CHECK(again.name == spec.name);
    CHECK(again.dim == spec.dim);
    REQUIRE(again.components.size() == spec.components.size());
    for (std::size_t i = 0; i < spec.components.size(); ++i)
      CHECK(structurally_equal(*spec.components[i], *again.components[i]));
    CHECK(structurally_equal(*spec.defining_function, *again.defining_function));
    REQUIRE(again.boundary_chart.size() == spec.boundary_chart.size());
    for (std::size_t i = 0; i < spec.boundary_chart.size(); ++i)
      CHECK(structurally_equal(*spec.boundary_chart[i], *again.boundary_chart[i]));
    CHECK(again.boundary_samples == spec.boundary_samples);
  }
}

TEST_CASE("dump_json is stable and handles special values") {
  Json doc;
  doc["b"] = 1;
  doc["a"] = 2;  // ordered_json: insertion order, not sorted
  doc["x"] = 0.1;
  doc["nested"] = {{"v", std::nan("")}};
  doc["arr"] = {1.5, 2.0};
  std::string text = dump_json(doc);
  CHECK(text == dump_json(doc));
  CHECK(text.find("\"b\"") < text.find("\"a\""));
  CHECK(text.find("nan") == std::string::npos);
  CHECK(text.find("null") != std::string::npos);
  // round-trip precision: 0.1 prints with enough digits to re-read exactly
  Json again = Json::parse(text);
  CHECK(again["x"].get<double>() == 0.1);
}
