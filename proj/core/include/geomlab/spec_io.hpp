#pragma once

#include <string>

#include <json.hpp>

#include "geomlab/analysis.hpp"
#include "geomlab/geometry.hpp"

namespace geomlab {

using Json = nlohmann::ordered_json;

class SpecFileError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Parses a metric-spec JSON document. Rejection messages name the
/// offending key.
MetricSpec load_metric_spec(const Json& doc);
MetricSpec load_metric_spec_file(const std::string& path);

Json metric_spec_to_json(const MetricSpec& spec);

Json report_to_json(const AnalysisReport& report);

/// Deterministic serialization: fixed key order (ordered_json) and floats
/// rendered with 17 significant digits.
std::string dump_json(const Json& j, int indent = 2);

}  // namespace geomlab
