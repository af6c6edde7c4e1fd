#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "geomlab/expr.hpp"
#include "geomlab/jet.hpp"

namespace geomlab {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

class SingularMetricError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Rank-3 array T^k_ij, dense, m^3 entries.
class Tensor3 {
public:
  Tensor3() = default;
  explicit Tensor3(int m) : m_(m), data_(static_cast<std::size_t>(m) * m * m, 0.0) {}
  double& operator()(int k, int i, int j) { return data_[(static_cast<std::size_t>(k) * m_ + i) * m_ + j]; }
  double operator()(int k, int i, int j) const { return data_[(static_cast<std::size_t>(k) * m_ + i) * m_ + j]; }
  int dim() const { return m_; }

private:
  int m_ = 0;
  std::vector<double> data_;
};

/// Rank-4 array, dense, m^4 entries.
class Tensor4 {
public:
  Tensor4() = default;
  explicit Tensor4(int m) : m_(m), data_(static_cast<std::size_t>(m) * m * m * m, 0.0) {}
  double& operator()(int a, int b, int c, int d) {
    return data_[((static_cast<std::size_t>(a) * m_ + b) * m_ + c) * m_ + d];
  }
  double operator()(int a, int b, int c, int d) const {
    return data_[((static_cast<std::size_t>(a) * m_ + b) * m_ + c) * m_ + d];
  }
  int dim() const { return m_; }

private:
  int m_ = 0;
  std::vector<double> data_;
};

/// Closed-form metric on a chart with boundary. Component expressions are
/// stored for the upper triangle only; (i,j) lookups fold to (min,max).
struct MetricSpec {
  std::string name;
  int dim = 0;  // m = n + 1
  std::vector<std::string> coords;
  std::map<std::string, double> params;
  std::vector<ExprPtr> components;  // row-major upper triangle, i <= j
  ExprPtr defining_function;
  std::vector<ExprPtr> boundary_chart;  // m expressions in n boundary parameters
  std::vector<std::string> boundary_params;
  std::vector<std::vector<double>> boundary_samples;  // parameter tuples
  std::pair<int, int> signature{0, 0};  // (p, q), p + q = m

  int n() const { return dim - 1; }

  const ExprPtr& component(int i, int j) const {
    if (i > j) std::swap(i, j);
    return components[static_cast<std::size_t>(i) * (2 * dim - i - 1) / 2 + j];
  }

  /// Chart coordinates of the boundary point with the given parameters.
  Vector boundary_point(const std::vector<double>& bparams) const;

  /// Defining function value at a chart point.
  double defining_value(const Vector& point) const;

  /// Gradient of the defining function at a chart point.
  Vector defining_gradient(const Vector& point) const;
};

struct MetricAtPoint {
  std::vector<Jet2> g;  // upper triangle of order-2 jets, i <= j
  Matrix g_value;
  Matrix g_inv;
  double det_g = 0.0;
  int dim = 0;

  const Jet2& jet(int i, int j) const {
    int a = std::min(i, j), b = std::max(i, j);
    return g[static_cast<std::size_t>(a) * (2 * dim - a - 1) / 2 + b];
  }
};

struct ChristoffelData {
  Vector point;
  Tensor3 gamma_full;  // Gamma^k_ij
  Vector trace;        // gamma_i = sum_k Gamma^k_ik
  Tensor3 tracefree;   // Psi^k_ij
  Tensor4 dGamma;      // dGamma(l,k,i,j) = d_l Gamma^k_ij
};

struct CurvatureData {
  Tensor4 riemann;  // R_ij^k_l stored as (i,j,k,l)
  Matrix ricci;
  double scalar = 0.0;
  Matrix schouten;
  double schouten_trace = 0.0;
};

/// Chart-trivialized projective density: weight and representative function.
struct DensityRep {
  double weight = 0.0;
  std::function<double(const Vector&)> rep;
};

MetricAtPoint metric_at(const MetricSpec& spec, const Vector& point);

ChristoffelData levi_civita(const MetricSpec& spec, const Vector& point);

/// Connection change Gamma^k_ij + Y_i d^k_j + Y_j d^k_i. Leaves the
/// trace-free part untouched; shifts the trace by (n+2) Y_i. Derivative data
/// is dropped (dGamma of the result is not available without dY).
ChristoffelData projective_change(const ChristoffelData& gamma, const Vector& upsilon);

CurvatureData curvature(const MetricSpec& spec, const Vector& point);

/// tau = vol(g)^(-2/(n+2)) as a weight-2 density; representative
/// |det g|^(-1/(n+2)).
DensityRep tau_density(const MetricSpec& spec);

/// Validates structural invariants at the given interior probe points:
/// nondegeneracy, signature eigenvalue counts, positive defining function.
/// Throws std::runtime_error naming the failed check.
void validate_spec(const MetricSpec& spec, const std::vector<Vector>& probes);

}  // namespace geomlab
