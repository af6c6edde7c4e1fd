#pragma once

#include <functional>
#include <string>
#include <vector>

#include "geomlab/geometry.hpp"

namespace geomlab {

using ScalarField = std::function<double(const Vector&)>;

/// Geometric sampling schedule along an inward ray from a boundary point.
/// The direction is normalized against the defining function: dr(dir) = 1.
struct RaySpec {
  Vector boundary_point;
  Vector inward_direction;
  double t0 = 0.1;
  double ratio = 0.7;
  int count = 25;

  Vector at(double t) const { return boundary_point + t * inward_direction; }
};

/// Builds a validated ray at the given boundary point, with direction
/// grad(r)/|grad(r)|^2 so that dr(direction) = 1.
RaySpec make_ray(const MetricSpec& spec, const Vector& boundary_point,
                 double t0 = 0.1, double ratio = 0.7, int count = 25);

/// Rays at every boundary sample of the spec.
std::vector<RaySpec> boundary_rays(const MetricSpec& spec, double t0 = 0.1,
                                   double ratio = 0.7, int count = 25);

enum class LimitKind { Extends, Diverges, Vanishes, Inconclusive };

const char* to_string(LimitKind kind);

struct ExtensionVerdict {
  LimitKind kind = LimitKind::Inconclusive;
  double boundary_value = 0.0;    // Extends (also 0 for Vanishes)
  double normal_derivative = 0.0; // Extends / Vanishes: linear coefficient
  double rate = 0.0;              // Diverges: |f| ~ t^-rate
  double order = 0.0;             // Vanishes: f ~ c t^order
  double residual = 0.0;          // relative RMS residual of the polynomial fit
};

struct Sample {
  double t;
  double f;
};

std::vector<Sample> sample_ray(const ScalarField& field, const RaySpec& ray);

/// Least-squares polynomial fit in t/t0; falls back to a log-log slope fit
/// on the smallest third of the samples when the polynomial residual is too
/// large. See ExtensionVerdict for the meaning of each outcome.
///
/// zero_floor is an absolute magnitude below which the field counts as
/// identically zero (extends with value 0). Callers evaluating differences
/// of large quantities pass a floor tied to the magnitude of the inputs so
/// cancellation noise is not mistaken for structure.
ExtensionVerdict classify_limit(const std::vector<Sample>& samples,
                                double extend_tolerance = 1e-6, int degree = 4,
                                double zero_floor = 0.0);

struct DefiningDensityResult {
  bool is_defining = false;
  std::vector<ExtensionVerdict> per_ray;
  std::vector<double> gradient_magnitudes;  // |grad rep| at each boundary point
};

/// Lemma-style test: the representative must vanish to exactly first order
/// with nonzero derivative along every ray.
DefiningDensityResult defining_density_test(const MetricSpec& spec,
                                            const ScalarField& rep,
                                            const std::vector<RaySpec>& rays,
                                            double extend_tolerance = 1e-6,
                                            int degree = 4);

struct OrderEstimate {
  bool ok = false;
  std::string error;
  double alpha = 0.0;
  int k = 0;
  std::vector<ExtensionVerdict> per_ray;
};

/// Vanishing order k of the tau representative and the compactness order
/// alpha = 2/k. A representative with no boundary zero reports the
/// "connection extends" error branch.
OrderEstimate order_estimate(const ScalarField& tau_rep,
                             const std::vector<RaySpec>& rays,
                             double extend_tolerance = 1e-6, int degree = 4);

}  // namespace geomlab
