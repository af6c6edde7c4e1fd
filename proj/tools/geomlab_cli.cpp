// geomlab command-line front end: metric-spec JSON in, report JSON/text out.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "geomlab/analysis.hpp"
#include "geomlab/spec_io.hpp"
#include "geomlab/zoo.hpp"

namespace {

using namespace geomlab;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitNumericalFailure = 2;
constexpr int kExitExpectationMismatch = 3;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

struct ToleranceFlags {
  AnalysisConfig config;

  void attach(CLI::App* cmd) {
    cmd->add_option("--tol-extend", config.extend_tolerance,
                    "relative RMS residual below which a field extends");
    cmd->add_option("--samples", config.count, "samples per ray");
    cmd->add_option("--ratio", config.ratio, "geometric schedule ratio in (0,1)");
    cmd->add_option("--t0", config.t0, "largest ray parameter");
    cmd->add_option("--degree", config.degree, "polynomial fit degree");
  }
};

Json summary_json(const AnalysisReport& r) {
  Json s;
  s["projective_extension"] = r.extension_test.passes ? "PASS" : "FAIL";
  s["connection_extends"] = r.connection_nonextension.gamma_diverges ? "no" : "yes";
  if (r.scalar_boundary.extends && !r.scalar_boundary.values.empty())
    s["S_boundary"] = fmt(r.scalar_boundary.values.front());
  if (r.main_theorem.order.ok) {
    s["order"] = fmt(r.main_theorem.order.alpha);
    s["k"] = r.main_theorem.order.k;
  }
  s["conclusion_order2"] = r.main_theorem.conclusion_order2;
  if (r.asymptotics.available) {
    s["C"] = fmt(r.asymptotics.C_measured);
    s["C_predicted"] = fmt(r.asymptotics.C_predicted);
  }
  return s;
}

void print_summary(const AnalysisReport& r) {
  std::cout << "metric: " << r.metric_name << " (dimension " << r.dim << ")\n";
  std::cout << "projective extension: "
            << (r.extension_test.passes ? "PASS" : "FAIL") << "\n";
  if (!r.extension_test.passes)
    std::cout << "  worst Psi divergence rate: "
              << fmt(r.extension_test.worst_divergence_rate) << "\n";
  std::cout << "connection extends: "
            << (r.connection_nonextension.gamma_diverges ? "no (gamma diverges, rate "
                + fmt(r.connection_nonextension.rate) + ")" : "yes") << "\n";
  if (r.scalar_boundary.extends && !r.scalar_boundary.values.empty()) {
    std::cout << "S boundary: " << fmt(r.scalar_boundary.values.front())
              << (r.scalar_boundary.locally_constant ? " (locally constant)" : "")
              << "\n";
  } else {
    std::cout << "S boundary: no smooth extension detected\n";
  }
  std::cout << "hypotheses: (" << (r.main_theorem.hypotheses[0] ? "T" : "F") << ","
            << (r.main_theorem.hypotheses[1] ? "T" : "F") << ","
            << (r.main_theorem.hypotheses[2] ? "T" : "F") << ")\n";
  if (r.main_theorem.order.ok)
    std::cout << "order: " << fmt(r.main_theorem.order.alpha)
              << " (tau vanishing order k = " << r.main_theorem.order.k << ")\n";
  else
    std::cout << "order: undetermined (" << r.main_theorem.order.error << ")\n";
  std::cout << "projectively compact of order 2: "
            << (r.main_theorem.conclusion_order2 ? "yes" : "no") << "\n";
  if (r.asymptotics.available) {
    std::cout << "C: " << fmt(r.asymptotics.C_measured)
              << " (predicted " << fmt(r.asymptotics.C_predicted) << ")\n";
  }
  std::cout << "tractor determinant residual: "
            << fmt(r.tractor_checks.det_identity_residual) << "\n";
  if (r.tractor_checks.phi_middle_residual)
    std::cout << "phi middle-slot residual: "
              << fmt(*r.tractor_checks.phi_middle_residual) << "\n";
  for (const auto& e : r.errors) std::cout << "error: " << e << "\n";
}

void write_report(const AnalysisReport& r, const std::string& out_path) {
  Json doc = report_to_json(r);
  doc["summary"] = summary_json(r);
  std::string text = dump_json(doc);
  if (out_path.empty()) return;
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw SpecFileError("cannot write report to " + out_path);
  out << text;
}

int compare_expected(const AnalysisReport& r, const zoo::Expected& e) {
  int mismatches = 0;
  auto flag = [&](const std::string& what, const std::string& got,
                  const std::string& want) {
    std::cout << "MISMATCH " << what << ": got " << got << ", expected " << want
              << "\n";
    ++mismatches;
  };
  auto check_bool = [&](const char* what, std::optional<bool> want, bool got) {
    if (want && *want != got)
      flag(what, got ? "true" : "false", *want ? "true" : "false");
  };
  auto check_close = [&](const char* what, std::optional<double> want, double got,
                         double rel) {
    if (want && std::abs(got - *want) > rel * std::max(1.0, std::abs(*want)))
      flag(what, fmt(got), fmt(*want));
  };

  check_bool("extension_passes", e.extension_passes, r.extension_test.passes);
  check_bool("gamma_diverges", e.gamma_diverges,
             r.connection_nonextension.gamma_diverges);
  check_bool("scalar_extends", e.scalar_extends, r.scalar_boundary.extends);
  if (e.scalar_boundary && !r.scalar_boundary.values.empty())
    check_close("scalar_boundary", e.scalar_boundary,
                r.scalar_boundary.values.front(), 0.01);
  if (e.hypotheses) {
    for (int i = 0; i < 3; ++i)
      check_bool(("hypothesis " + std::to_string(i + 1)).c_str(),
                 (*e.hypotheses)[i], r.main_theorem.hypotheses[i]);
  }
  if (e.order_k && r.main_theorem.order.ok && *e.order_k != r.main_theorem.order.k)
    flag("order_k", std::to_string(r.main_theorem.order.k), std::to_string(*e.order_k));
  if (e.order_k && !r.main_theorem.order.ok)
    flag("order_k", "undetermined", std::to_string(*e.order_k));
  if (e.alpha && r.main_theorem.order.ok)
    check_close("alpha", e.alpha, r.main_theorem.order.alpha, 1e-9);
  check_bool("conclusion_order2", e.conclusion_order2,
             r.main_theorem.conclusion_order2);
  if (e.psi_divergence_rate)
    check_close("psi_divergence_rate", e.psi_divergence_rate,
                r.extension_test.worst_divergence_rate, 0.05);
  if (e.C) {
    if (!r.asymptotics.available)
      flag("C", "unavailable", fmt(*e.C));
    else
      check_close("C", e.C, r.asymptotics.C_measured, 0.01);
  }
  if (e.einstein && r.asymptotics.available) {
    bool einstein = r.asymptotics.max_tracefree_ricci < 1e-9;
    check_bool("einstein", e.einstein, einstein);
  }
  if (r.asymptotics.available) {
    check_bool("tracefree_ricci_extends", e.tracefree_ricci_extends,
               r.asymptotics.tracefree_ricci_extends);
    check_bool("ricci_diverges", e.ricci_diverges, r.asymptotics.ricci_diverges);
  }
  return mismatches;
}

MetricSpec load_and_validate(const std::string& path, const AnalysisConfig& config) {
  MetricSpec spec = load_metric_spec_file(path);
  if (spec.boundary_chart.empty() || spec.boundary_samples.empty())
    throw SpecFileError(
        "boundary_chart/boundary_samples: required for boundary analysis");
  std::vector<Vector> probes;
  for (const auto& ray : boundary_rays(spec, config.t0, config.ratio, config.count))
    probes.push_back(ray.at(config.t0));
  validate_spec(spec, probes);
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"projective compactness analyzer for closed-form metrics"};
  app.require_subcommand(1);

  ToleranceFlags tol;

  // analyze
  auto* analyze = app.add_subcommand("analyze", "run the full analysis pipeline");
  std::string metric_path, out_path;
  analyze->add_option("--metric", metric_path, "metric-spec JSON file")->required();
  analyze->add_option("--out", out_path, "write the JSON report here");
  tol.attach(analyze);

  // check-extension
  auto* checkext =
      app.add_subcommand("check-extension", "projective extension test only");
  std::string ce_metric;
  checkext->add_option("--metric", ce_metric, "metric-spec JSON file")->required();
  tol.attach(checkext);

  // asymptotics
  auto* asym = app.add_subcommand("asymptotics", "asymptotic-form checks only");
  std::string as_metric;
  asym->add_option("--metric", as_metric, "metric-spec JSON file")->required();
  tol.attach(asym);

  // zoo
  auto* zoo_cmd = app.add_subcommand("zoo", "built-in metric catalog");
  auto* zoo_list = zoo_cmd->add_subcommand("list", "list entries");
  auto* zoo_export = zoo_cmd->add_subcommand("export", "write an entry as JSON");
  auto* zoo_run = zoo_cmd->add_subcommand("run", "analyze an entry and diff expectations");
  std::string zoo_name, zoo_out;
  int zoo_m = 3;
  zoo_export->add_option("name", zoo_name, "entry name")->required();
  zoo_export->add_option("--m", zoo_m, "dimension (2..5)");
  zoo_export->add_option("--out", zoo_out, "output file")->required();
  std::string zr_name;
  int zr_m = 3;
  zoo_run->add_option("name", zr_name, "entry name")->required();
  zoo_run->add_option("--m", zr_m, "dimension (2..5)");
  tol.attach(zoo_run);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze) {
      MetricSpec spec = load_and_validate(metric_path, tol.config);
      AnalysisReport report = full_report(spec, nullptr, tol.config);
      write_report(report, out_path);
      print_summary(report);
      return kExitOk;
    }
    if (*checkext) {
      MetricSpec spec = load_and_validate(ce_metric, tol.config);
      auto rays = boundary_rays(spec, tol.config.t0, tol.config.ratio, tol.config.count);
      auto result = check_projective_extension(spec, rays, tol.config);
      std::cout << "projective extension: " << (result.passes ? "PASS" : "FAIL")
                << "\n";
      for (const auto& c : result.components) {
        if (c.kind == LimitKind::Diverges)
          std::cout << "  " << c.label << ": diverges, rate " << fmt(c.rate) << "\n";
      }
      return kExitOk;
    }
    if (*asym) {
      MetricSpec spec = load_and_validate(as_metric, tol.config);
      AsymptoticsResult result = asymptotic_form(spec, tol.config);
      if (!result.available) {
        std::cout << "asymptotics unavailable: " << result.note << "\n";
        return kExitOk;
      }
      std::cout << "C: " << fmt(result.C_measured) << " (predicted "
                << fmt(result.C_predicted) << ")\n";
      std::cout << "tracefree Ricci extends: "
                << (result.tracefree_ricci_extends ? "yes" : "no") << "\n";
      std::cout << "Ricci diverges: " << (result.ricci_diverges ? "yes" : "no")
                << "\n";
      return kExitOk;
    }
    if (*zoo_list) {
      for (const auto& name : zoo::list()) std::cout << name << "\n";
      return kExitOk;
    }
    if (*zoo_export) {
      MetricSpec spec = zoo::instantiate(zoo_name, zoo_m);
      std::ofstream out(zoo_out, std::ios::binary);
      if (!out) throw SpecFileError("cannot write " + zoo_out);
      out << dump_json(metric_spec_to_json(spec));
      return kExitOk;
    }
    if (*zoo_run) {
      MetricSpec spec = zoo::instantiate(zr_name, zr_m);
      auto adapted = zoo::adapted(zr_name, zr_m);
      AnalysisReport report =
          full_report(spec, adapted ? &*adapted : nullptr, tol.config);
      print_summary(report);
      int mismatches = compare_expected(report, zoo::expected(zr_name, zr_m));
      if (mismatches > 0) {
        std::cout << mismatches << " expectation mismatch(es)\n";
        return kExitExpectationMismatch;
      }
      std::cout << "all expectations met\n";
      return kExitOk;
    }
  } catch (const SpecFileError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumericalFailure;
  }
  return kExitInputError;
}
