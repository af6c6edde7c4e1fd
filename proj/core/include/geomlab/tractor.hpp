#pragma once

#include <string>
#include <vector>

#include "geomlab/boundary.hpp"
#include "geomlab/geometry.hpp"

namespace geomlab {

/// Three-slot representation of a section of S2T in a chosen splitting:
/// projecting slot on top.
struct TractorS2 {
  Matrix top;      // sigma^ij, symmetric m x m
  Vector middle;   // mu^i
  double bottom = 0.0;  // rho
  std::string splitting_tag;
};

/// Three-slot representation of a section of S2T*: scalar on top.
struct TractorS2Dual {
  double top = 0.0;  // sigma
  Vector middle;     // mu_i
  Matrix bottom;     // psi_ij, symmetric
  std::string splitting_tag;
};

/// Canonical lift of the metricity solution in the Levi-Civita splitting:
/// (tau^-1 g^ij, 0, tau^-1 S / (n (n+1))).
TractorS2 build_L(const MetricSpec& spec, const Vector& point);

/// (n+2) x (n+2) bilinear-form matrix [[top, middle], [middle^T, bottom]].
Matrix assemble(const TractorS2& t);

Matrix assemble(const TractorS2Dual& t);  // [[bottom, middle], [middle^T, top]]

struct TractorDetResult {
  double det = 0.0;
  double predicted = 0.0;  // sgn(det g) * S / (n (n+1))
};

TractorDetResult tractor_det(const TractorS2& t, const MetricSpec& spec,
                             const Vector& point);

/// Pointwise inverse of L in the Levi-Civita splitting:
/// (n (n+1) tau / S, 0, tau g_ij). Requires S != 0.
TractorS2Dual build_Phi(const MetricSpec& spec, const Vector& point);

/// Max-abs residual of assemble(Phi) * assemble(L) - identity.
double inverse_check(const TractorS2& L, const TractorS2Dual& Phi);

/// Splitting-change sign constants; the only choice compatible with the
/// determinant-invariance test (up to the Upsilon -> -Upsilon relabeling).
struct SplittingSigns {
  double s1 = 1.0;
  double s2 = 1.0;
  double s3 = 1.0;
};

/// Change of splitting by a one-form Upsilon:
///   sigma unchanged, mu_i += s1 Y_i sigma,
///   psi_ij += s2 (Y_i mu_j + Y_j mu_i) + s3 Y_i Y_j sigma.
TractorS2Dual change_splitting(const TractorS2Dual& t, const Vector& upsilon,
                               const SplittingSigns& signs = {});

struct PhiMiddleSlotResult {
  // per ray: max over components of |mu~_i - (1/2) d_i sigma~| at the boundary
  std::vector<double> per_ray_residual;
  double max_residual = 0.0;
};

/// Boundary consequence of the parallelism equation: in the trace-free
/// splitting (Upsilon = -gamma/(n+2)) the middle slot of Phi equals half the
/// chart gradient of the top slot along the boundary.
PhiMiddleSlotResult phi_middle_slot_check(const MetricSpec& spec,
                                          const std::vector<RaySpec>& rays,
                                          double extend_tolerance = 1e-6,
                                          int degree = 4);

}  // namespace geomlab
