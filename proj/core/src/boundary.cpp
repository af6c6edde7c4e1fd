#include "geomlab/boundary.hpp"

#include <algorithm>
#include <cmath>

namespace geomlab {

const char* to_string(LimitKind kind) {
  switch (kind) {
    case LimitKind::Extends: return "extends";
    case LimitKind::Diverges: return "diverges";
    case LimitKind::Vanishes: return "vanishes";
    case LimitKind::Inconclusive: return "inconclusive";
  }
  return "?";
}

RaySpec make_ray(const MetricSpec& spec, const Vector& boundary_point, double t0,
                 double ratio, int count) {
  double r0 = spec.defining_value(boundary_point);
  if (std::abs(r0) > 1e-10)
    throw std::runtime_error("ray base point is not on the boundary (r != 0)");
  Vector grad = spec.defining_gradient(boundary_point);
  double n2 = grad.squaredNorm();
  if (n2 == 0.0)
    throw std::runtime_error("defining function has vanishing gradient at boundary point");
  RaySpec ray;
  ray.boundary_point = boundary_point;
  ray.inward_direction = grad / n2;  // dr(direction) = 1
  ray.t0 = t0;
  ray.ratio = ratio;
  ray.count = count;
  return ray;
}

std::vector<RaySpec> boundary_rays(const MetricSpec& spec, double t0, double ratio,
                                   int count) {
  std::vector<RaySpec> rays;
  for (const auto& bp : spec.boundary_samples)
    rays.push_back(make_ray(spec, spec.boundary_point(bp), t0, ratio, count));
  return rays;
}

std::vector<Sample> sample_ray(const ScalarField& field, const RaySpec& ray) {
  std::vector<Sample> out;
  out.reserve(ray.count);
  double t = ray.t0;
  for (int k = 0; k < ray.count; ++k, t *= ray.ratio) {
    try {
      out.push_back({t, field(ray.at(t))});
    } catch (const std::exception& e) {
      throw std::runtime_error("field evaluation failed at t=" + std::to_string(t) +
                               ": " + e.what());
    }
  }
  return out;
}

namespace {

double snap_integer(double k, double window = 0.05) {
  double r = std::round(k);
  return std::abs(k - r) <= window ? r : k;
}

// Slope of log|f| vs log t on the smallest third of the samples.
// Returns false when any value in the tail vanishes.
bool loglog_slope(const std::vector<Sample>& samples, double& slope_out) {
  std::size_t third = std::max<std::size_t>(3, samples.size() / 3);
  std::size_t begin = samples.size() - third;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = begin; i < samples.size(); ++i) {
    if (samples[i].f == 0.0) return false;
    double x = std::log(samples[i].t);
    double y = std::log(std::abs(samples[i].f));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  double denom = n * sxx - sx * sx;
  if (denom == 0.0) return false;
  slope_out = (n * sxy - sx * sy) / denom;
  return true;
}

}  // namespace

ExtensionVerdict classify_limit(const std::vector<Sample>& samples,
                                double extend_tolerance, int degree,
                                double zero_floor) {
  if (static_cast<int>(samples.size()) < degree + 3)
    throw std::runtime_error("classify_limit: need at least degree+3 samples");

  double scale = 0.0;
  for (const auto& s : samples) scale = std::max(scale, std::abs(s.f));
  if (scale <= zero_floor) {
    ExtensionVerdict v;
    v.kind = LimitKind::Extends;
    return v;  // identically zero: extends with value 0, derivative 0
  }

  // Vandermonde fit in u = t/t0 (t0 is the largest sample t).
  const double t0 = samples.front().t;
  const int cols = degree + 1;
  Matrix V(samples.size(), cols);
  Vector y(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double u = samples[i].t / t0;
    double up = 1.0;
    for (int j = 0; j < cols; ++j, up *= u) V(i, j) = up;
    y(i) = samples[i].f;
  }
  Vector c = V.colPivHouseholderQr().solve(y);
  double rss = (V * c - y).squaredNorm();
  double residual = std::sqrt(rss / samples.size()) / scale;

  ExtensionVerdict v;
  v.residual = residual;
  const double a0 = c(0);
  const double a1 = c(1) / t0;

  if (residual < extend_tolerance && std::isfinite(a0)) {
    if (std::abs(a0) > 1e-6 * std::max(1.0, scale)) {
      v.kind = LimitKind::Extends;
      v.boundary_value = a0;
      v.normal_derivative = a1;
      return v;
    }
    // boundary value is zero: report the vanishing order from the tail slope
    v.kind = LimitKind::Vanishes;
    v.boundary_value = 0.0;
    v.normal_derivative = a1;
    double s = 1.0;
    if (loglog_slope(samples, s)) v.order = snap_integer(s);
    else v.order = 1.0;
    return v;
  }

  double s = 0.0;
  if (loglog_slope(samples, s)) {
    if (s < -0.1) {
      v.kind = LimitKind::Diverges;
      v.rate = -s;
      return v;
    }
    if (s > 0.1) {
      v.kind = LimitKind::Vanishes;
      v.order = snap_integer(s);
      v.normal_derivative = a1;
      return v;
    }
  }
  v.kind = LimitKind::Inconclusive;
  return v;
}

DefiningDensityResult defining_density_test(const MetricSpec& spec,
                                            const ScalarField& rep,
                                            const std::vector<RaySpec>& rays,
                                            double extend_tolerance, int degree) {
  DefiningDensityResult out;
  out.is_defining = true;
  for (const auto& ray : rays) {
    ExtensionVerdict v = classify_limit(sample_ray(rep, ray), extend_tolerance, degree);
    bool first_order = v.kind == LimitKind::Vanishes && v.order == 1.0 &&
                       v.normal_derivative != 0.0;
    if (!first_order) out.is_defining = false;
    // d(rep) = a1 * dr at the boundary when rep is c*r to leading order, so
    // the chart-gradient magnitude is a1 * |grad r|.
    double grad_mag =
        std::abs(v.normal_derivative) * spec.defining_gradient(ray.boundary_point).norm();
    out.gradient_magnitudes.push_back(grad_mag);
    out.per_ray.push_back(v);
  }
  return out;
}

OrderEstimate order_estimate(const ScalarField& tau_rep,
                             const std::vector<RaySpec>& rays,
                             double extend_tolerance, int degree) {
  OrderEstimate out;
  int k_common = -1;
  for (const auto& ray : rays) {
    ExtensionVerdict v = classify_limit(sample_ray(tau_rep, ray), extend_tolerance, degree);
    out.per_ray.push_back(v);
    if (v.kind == LimitKind::Extends && v.boundary_value != 0.0) {
      out.error =
          "tau does not vanish at the boundary: connection extends "
          "(hypothesis 2 of the order-2 theorem fails)";
      return out;
    }
    if (v.kind != LimitKind::Vanishes || v.order != std::round(v.order) ||
        v.order < 1.0) {
      out.error = "tau vanishing order is not a positive integer along a ray";
      return out;
    }
    int k = static_cast<int>(std::lround(v.order));
    if (k_common == -1) k_common = k;
    if (k != k_common) {
      out.error = "inconsistent tau vanishing order across rays";
      return out;
    }
  }
  if (k_common <= 0) {
    out.error = "no rays supplied";
    return out;
  }
  out.ok = true;
  out.k = k_common;
  out.alpha = 2.0 / k_common;
  return out;
}

}  // namespace geomlab
