#include "geomlab/spec_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace geomlab {

namespace {

template <class T>
T require(const Json& doc, const char* key) {
  if (!doc.contains(key))
    throw SpecFileError(std::string("missing key: ") + key);
  try {
    return doc.at(key).get<T>();
  } catch (const Json::exception&) {
    throw SpecFileError(std::string("wrong type for key: ") + key);
  }
}

}  // namespace

MetricSpec load_metric_spec(const Json& doc) {
  MetricSpec spec;
  spec.name = require<std::string>(doc, "name");
  spec.dim = require<int>(doc, "dimension");
  if (spec.dim < 2) throw SpecFileError("dimension: must be at least 2");
  spec.coords = require<std::vector<std::string>>(doc, "coordinates");
  if (static_cast<int>(spec.coords.size()) != spec.dim)
    throw SpecFileError("coordinates: expected one name per dimension");

  auto sig = require<std::vector<int>>(doc, "signature");
  if (sig.size() != 2 || sig[0] + sig[1] != spec.dim)
    throw SpecFileError("signature: expected [p, q] with p+q = dimension");
  spec.signature = {sig[0], sig[1]};

  if (doc.contains("parameters")) {
    for (const auto& [k, v] : doc.at("parameters").items()) {
      if (!v.is_number()) throw SpecFileError("parameters: value for " + k + " is not a number");
      spec.params[k] = v.get<double>();
    }
  }
  std::vector<std::string> pnames;
  for (const auto& [k, v] : spec.params) pnames.push_back(k);

  auto rows = require<std::vector<std::vector<std::string>>>(doc, "components");
  if (static_cast<int>(rows.size()) != spec.dim)
    throw SpecFileError("components: expected one row per dimension");
  for (int i = 0; i < spec.dim; ++i) {
    if (static_cast<int>(rows[i].size()) != spec.dim - i)
      throw SpecFileError("components: row " + std::to_string(i) +
                          " must hold the upper triangle (dimension - row entries)");
    for (const auto& src : rows[i]) {
      try {
        spec.components.push_back(parse(src, spec.coords, pnames));
      } catch (const ParseError& e) {
        throw SpecFileError("components: " + std::string(e.what()));
      }
    }
  }

  try {
    spec.defining_function =
        parse(require<std::string>(doc, "defining_function"), spec.coords, pnames);
  } catch (const ParseError& e) {
    throw SpecFileError("defining_function: " + std::string(e.what()));
  }

  for (int i = 1; i < spec.dim; ++i)
    spec.boundary_params.push_back("u" + std::to_string(i));
  if (doc.contains("boundary_chart")) {
    auto exprs = require<std::vector<std::string>>(doc, "boundary_chart");
    if (static_cast<int>(exprs.size()) != spec.dim)
      throw SpecFileError("boundary_chart: expected one expression per coordinate");
    for (const auto& src : exprs) {
      try {
        spec.boundary_chart.push_back(parse(src, spec.boundary_params, pnames));
      } catch (const ParseError& e) {
        throw SpecFileError("boundary_chart: " + std::string(e.what()));
      }
    }
  }
  if (doc.contains("boundary_samples")) {
    spec.boundary_samples =
        require<std::vector<std::vector<double>>>(doc, "boundary_samples");
    for (const auto& tup : spec.boundary_samples)
      if (static_cast<int>(tup.size()) != spec.dim - 1)
        throw SpecFileError("boundary_samples: tuple length must be dimension-1");
  }
  return spec;
}

MetricSpec load_metric_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecFileError("cannot open file: " + path);
  Json doc;
  try {
    in >> doc;
  } catch (const Json::exception& e) {
    throw SpecFileError("malformed JSON in " + path + ": " + e.what());
  }
  return load_metric_spec(doc);
}

Json metric_spec_to_json(const MetricSpec& spec) {
  Json doc;
  doc["name"] = spec.name;
  doc["dimension"] = spec.dim;
  doc["coordinates"] = spec.coords;
  doc["signature"] = {spec.signature.first, spec.signature.second};
  doc["parameters"] = Json::object();
  for (const auto& [k, v] : spec.params) doc["parameters"][k] = v;
  Json rows = Json::array();
  std::size_t c = 0;
  for (int i = 0; i < spec.dim; ++i) {
    Json row = Json::array();
    for (int j = i; j < spec.dim; ++j) row.push_back(print(*spec.components[c++], spec.coords));
    rows.push_back(row);
  }
  doc["components"] = rows;
  doc["defining_function"] = print(*spec.defining_function, spec.coords);
  if (!spec.boundary_chart.empty()) {
    Json chart = Json::array();
    for (const auto& e : spec.boundary_chart) chart.push_back(print(*e, spec.boundary_params));
    doc["boundary_chart"] = chart;
  }
  if (!spec.boundary_samples.empty()) doc["boundary_samples"] = spec.boundary_samples;
  return doc;
}

namespace {

Json matrix_to_json(const Matrix& mat) {
  Json rows = Json::array();
  for (int i = 0; i < mat.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < mat.cols(); ++j) row.push_back(mat(i, j));
    rows.push_back(row);
  }
  return rows;
}

Json component_verdicts(const std::vector<ComponentVerdict>& comps) {
  Json out = Json::array();
  for (const auto& c : comps) {
    Json item;
    item["component"] = c.label;
    item["kind"] = to_string(c.kind);
    item["boundary_value"] = c.boundary_value;
    item["rate"] = c.rate;
    out.push_back(item);
  }
  return out;
}

}  // namespace

Json report_to_json(const AnalysisReport& report) {
  Json doc;
  doc["metric"] = report.metric_name;
  doc["dimension"] = report.dim;

  Json ext;
  ext["passes"] = report.extension_test.passes;
  ext["worst_divergence_rate"] = report.extension_test.worst_divergence_rate;
  ext["components"] = component_verdicts(report.extension_test.components);
  doc["extension_test"] = ext;

  Json conn;
  conn["gamma_diverges"] = report.connection_nonextension.gamma_diverges;
  conn["rate"] = report.connection_nonextension.rate;
  conn["components"] = component_verdicts(report.connection_nonextension.components);
  doc["connection_nonextension"] = conn;

  Json scal;
  scal["extends"] = report.scalar_boundary.extends;
  scal["values"] = report.scalar_boundary.values;
  scal["locally_constant"] = report.scalar_boundary.locally_constant;
  scal["nowhere_vanishing"] = report.scalar_boundary.nowhere_vanishing;
  doc["scalar_boundary"] = scal;

  Json order;
  order["ok"] = report.main_theorem.order.ok;
  order["error"] = report.main_theorem.order.error;
  order["alpha"] = report.main_theorem.order.alpha;
  order["k"] = report.main_theorem.order.k;
  doc["order"] = order;

  Json main;
  main["hypotheses"] = {report.main_theorem.hypotheses[0],
                        report.main_theorem.hypotheses[1],
                        report.main_theorem.hypotheses[2]};
  main["conclusion_order2"] = report.main_theorem.conclusion_order2;
  main["direct_route_extends"] = report.main_theorem.direct_route_extends;
  main["routes_consistent"] = report.main_theorem.routes_consistent;
  doc["main_theorem"] = main;

  Json asym;
  asym["available"] = report.asymptotics.available;
  asym["note"] = report.asymptotics.note;
  if (report.asymptotics.available) {
    asym["C_measured"] = report.asymptotics.C_measured;
    asym["C_predicted"] = report.asymptotics.C_predicted;
    Json hs = Json::array();
    for (const auto& h : report.asymptotics.h_boundary) hs.push_back(matrix_to_json(h));
    asym["h_boundary"] = hs;
    Json reps = Json::array();
    for (const auto& h : report.asymptotics.conformal_class_rep)
      reps.push_back(matrix_to_json(h));
    asym["conformal_class_rep"] = reps;
    asym["tracefree_ricci_extends"] = report.asymptotics.tracefree_ricci_extends;
    asym["ricci_diverges"] = report.asymptotics.ricci_diverges;
    asym["ricci_divergence_rate"] = report.asymptotics.ricci_divergence_rate;
    asym["max_tracefree_ricci"] = report.asymptotics.max_tracefree_ricci;
  }
  doc["asymptotics"] = asym;

  Json tr;
  tr["det_identity_residual"] = report.tractor_checks.det_identity_residual;
  if (report.tractor_checks.phi_middle_residual)
    tr["phi_middle_residual"] = *report.tractor_checks.phi_middle_residual;
  else
    tr["phi_middle_note"] = report.tractor_checks.phi_middle_note;
  doc["tractor_checks"] = tr;

  doc["errors"] = report.errors;
  return doc;
}

namespace {

void dump_rec(const Json& j, std::string& out, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent) * depth, ' ');
  const std::string pad_in(static_cast<std::size_t>(indent) * (depth + 1), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      std::size_t i = 0;
      for (const auto& [k, v] : j.items()) {
        out += pad_in + Json(k).dump() + ": ";
        dump_rec(v, out, indent, depth + 1);
        if (++i < j.size()) out += ",";
        out += "\n";
      }
      out += pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        out += pad_in;
        dump_rec(j[i], out, indent, depth + 1);
        if (i + 1 < j.size()) out += ",";
        out += "\n";
      }
      out += pad + "]";
      return;
    }
    case Json::value_t::number_float: {
      double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      out += buf;
      return;
    }
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

std::string dump_json(const Json& j, int indent) {
  std::string out;
  dump_rec(j, out, indent, 0);
  out += "\n";
  return out;
}

}  // namespace geomlab
