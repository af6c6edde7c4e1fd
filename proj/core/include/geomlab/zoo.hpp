#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "geomlab/geometry.hpp"

namespace geomlab {
namespace zoo {

/// Analytically known expectations for a zoo entry; every populated field
/// carries its oracle in the provenance note.
struct Expected {
  std::optional<bool> extension_passes;
  std::optional<double> psi_divergence_rate;
  std::optional<bool> gamma_diverges;
  std::optional<double> scalar_boundary;
  std::optional<bool> scalar_extends;
  std::optional<std::array<bool, 3>> hypotheses;
  std::optional<int> order_k;
  std::optional<double> alpha;
  std::optional<bool> conclusion_order2;
  std::optional<double> C;
  std::optional<bool> einstein;
  std::optional<bool> tracefree_ricci_extends;
  std::optional<bool> ricci_diverges;
  std::string provenance;
};

std::vector<std::string> list();

/// Builds the entry's metric spec in dimension m (2..5). Parameter
/// overrides apply where the entry is parameterized (normal form C etc).
MetricSpec instantiate(const std::string& name, int m,
                       const std::map<std::string, double>& params = {});

/// Adapted-chart variant (defining function = coordinate 0), where one
/// exists for the entry.
std::optional<MetricSpec> adapted(const std::string& name, int m,
                                  const std::map<std::string, double>& params = {});

Expected expected(const std::string& name, int m,
                  const std::map<std::string, double>& params = {});

}  // namespace zoo
}  // namespace geomlab
