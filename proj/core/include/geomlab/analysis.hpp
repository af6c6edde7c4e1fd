#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "geomlab/boundary.hpp"
#include "geomlab/geometry.hpp"
#include "geomlab/tractor.hpp"

namespace geomlab {

struct AnalysisConfig {
  double t0 = 0.1;
  double ratio = 0.7;
  int count = 25;
  double extend_tolerance = 1e-6;
  int degree = 4;
  /// |S| below this counts as vanishing scalar curvature.
  double scalar_zero_tolerance = 1e-6;
};

struct ComponentVerdict {
  std::string label;
  LimitKind kind = LimitKind::Inconclusive;
  double boundary_value = 0.0;
  double rate = 0.0;
};

struct ExtensionTestResult {
  bool passes = false;
  std::vector<ComponentVerdict> components;  // worst verdict per Psi component
  double worst_divergence_rate = 0.0;
};

struct ConnectionNonextensionResult {
  bool gamma_diverges = false;
  double rate = 0.0;
  std::vector<ComponentVerdict> components;
};

struct ScalarBoundaryResult {
  bool extends = false;
  std::vector<double> values;  // one per boundary point
  bool locally_constant = false;
  bool nowhere_vanishing = false;
};

struct MainTheoremResult {
  std::array<bool, 3> hypotheses{false, false, false};
  bool conclusion_order2 = false;
  bool direct_route_extends = false;  // Gamma + dr/(2r)-change extends
  bool routes_consistent = true;
  OrderEstimate order;
};

struct AsymptoticsResult {
  bool available = false;
  std::string note;  // why unavailable / diagnostic remarks
  double C_measured = 0.0;
  double C_predicted = 0.0;
  std::vector<Matrix> h_boundary;            // per boundary point, full m x m
  std::vector<Matrix> conformal_class_rep;   // n x n, |det| normalized to 1
  bool tracefree_ricci_extends = false;
  bool ricci_diverges = false;
  double ricci_divergence_rate = 0.0;
  double max_tracefree_ricci = 0.0;  // interior magnitude, Einstein check
};

struct TractorChecksResult {
  double det_identity_residual = 0.0;
  std::optional<double> phi_middle_residual;
  std::string phi_middle_note;
};

struct AnalysisReport {
  std::string metric_name;
  int dim = 0;
  ExtensionTestResult extension_test;
  ConnectionNonextensionResult connection_nonextension;
  ScalarBoundaryResult scalar_boundary;
  MainTheoremResult main_theorem;
  AsymptoticsResult asymptotics;
  TractorChecksResult tractor_checks;
  std::vector<std::string> errors;  // non-fatal failures, recorded in-report
};

ExtensionTestResult check_projective_extension(const MetricSpec& spec,
                                               const std::vector<RaySpec>& rays,
                                               const AnalysisConfig& config = {});

ConnectionNonextensionResult check_connection_nonextension(
    const MetricSpec& spec, const std::vector<RaySpec>& rays,
    const AnalysisConfig& config = {});

ScalarBoundaryResult scalar_boundary_value(const MetricSpec& spec,
                                           const std::vector<RaySpec>& rays,
                                           const AnalysisConfig& config = {});

MainTheoremResult order2_verdict(const MetricSpec& spec,
                                 const std::vector<RaySpec>& rays,
                                 const AnalysisConfig& config = {});

/// Requires a chart whose defining function is coordinate 0. Runs in
/// diagnostic mode when the order-2 verdict did not conclude.
AsymptoticsResult asymptotic_form(const MetricSpec& spec,
                                  const AnalysisConfig& config = {});

struct ConformalInvarianceResult {
  double max_ratio_spread = 0.0;         // across components, per boundary point
  double max_deviation_from_expected = 0.0;  // ratios vs e^{u|boundary}
};

/// Reruns the boundary-metric extraction with defining function e^u rho and
/// compares h' against e^u h on boundary directions. u must not reference
/// coordinate 0.
ConformalInvarianceResult conformal_class_invariance(
    const MetricSpec& adapted_spec, const ExprPtr& rescale,
    const AnalysisConfig& config = {});

/// Full pipeline in dependency order; all sub-verdicts recorded even when a
/// hypothesis fails. adapted_spec, when given, feeds the asymptotics block.
AnalysisReport full_report(const MetricSpec& spec,
                           const MetricSpec* adapted_spec = nullptr,
                           const AnalysisConfig& config = {});

}  // namespace geomlab
