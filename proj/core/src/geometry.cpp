#include "geomlab/geometry.hpp"

#include <cmath>

namespace geomlab {

Vector MetricSpec::boundary_point(const std::vector<double>& bparams) const {
  if (boundary_chart.empty())
    throw std::runtime_error("metric spec has no boundary chart");
  if (bparams.size() != static_cast<std::size_t>(n()))
    throw std::runtime_error("boundary parameter tuple has wrong length");
  Vector pt(dim);
  for (int i = 0; i < dim; ++i)
    pt(i) = eval_at(*boundary_chart[i], std::span<const double>(bparams), params);
  return pt;
}

double MetricSpec::defining_value(const Vector& point) const {
  std::vector<double> p(point.data(), point.data() + point.size());
  return eval_at(*defining_function, p, params);
}

Vector MetricSpec::defining_gradient(const Vector& point) const {
  std::vector<double> p(point.data(), point.data() + point.size());
  auto xs = Jet2::seeds(p);
  Jet2 r = eval<Jet2>(*defining_function, xs, params);
  return r.grad();
}

MetricAtPoint metric_at(const MetricSpec& spec, const Vector& point) {
  const int m = spec.dim;
  std::vector<double> p(point.data(), point.data() + point.size());
  auto xs = Jet2::seeds(p);

  MetricAtPoint out;
  out.dim = m;
  out.g.reserve(static_cast<std::size_t>(m) * (m + 1) / 2);
  out.g_value.resize(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      Jet2 gij = eval<Jet2>(*spec.component(i, j), xs, spec.params);
      out.g_value(i, j) = out.g_value(j, i) = gij.value();
      out.g.push_back(std::move(gij));
    }
  }
  Eigen::FullPivLU<Matrix> lu(out.g_value);
  out.det_g = lu.determinant();
  if (!lu.isInvertible())
    throw SingularMetricError("metric is singular at the evaluation point");
  out.g_inv = lu.inverse();
  return out;
}

ChristoffelData levi_civita(const MetricSpec& spec, const Vector& point) {
  const int m = spec.dim;
  const int n = spec.n();
  MetricAtPoint mp = metric_at(spec, point);

  // A(i,j,l) = d_i g_jl from the jet gradients,
  // B(k,i,j,l) = d_k d_i g_jl from the jet Hessians.
  Tensor3 A(m);
  Tensor4 B(m);
  for (int j = 0; j < m; ++j) {
    for (int l = 0; l < m; ++l) {
      const Jet2& gjl = mp.jet(j, l);
      for (int i = 0; i < m; ++i) {
        A(i, j, l) = gjl.grad()(i);
        for (int k = 0; k < m; ++k) B(k, i, j, l) = gjl.hess(k, i);
      }
    }
  }

  // d_k ginv^{ab} = -ginv^{ac} ginv^{bd} A(k,c,d)
  Tensor3 dGinv(m);
  for (int k = 0; k < m; ++k) {
    Matrix dg(m, m);
    for (int c = 0; c < m; ++c)
      for (int d = 0; d < m; ++d) dg(c, d) = A(k, c, d);
    Matrix r = -mp.g_inv * dg * mp.g_inv;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) dGinv(k, a, b) = r(a, b);
  }

  ChristoffelData out;
  out.point = point;
  out.gamma_full = Tensor3(m);
  out.dGamma = Tensor4(m);
  for (int k = 0; k < m; ++k) {
    for (int i = 0; i < m; ++i) {
      for (int j = i; j < m; ++j) {
        double gam = 0.0;
        for (int l = 0; l < m; ++l)
          gam += 0.5 * mp.g_inv(k, l) * (A(i, j, l) + A(j, i, l) - A(l, i, j));
        out.gamma_full(k, i, j) = gam;
        out.gamma_full(k, j, i) = gam;
        for (int d = 0; d < m; ++d) {
          double dv = 0.0;
          for (int l = 0; l < m; ++l) {
            dv += 0.5 * dGinv(d, k, l) * (A(i, j, l) + A(j, i, l) - A(l, i, j));
            dv += 0.5 * mp.g_inv(k, l) *
                  (B(d, i, j, l) + B(d, j, i, l) - B(d, l, i, j));
          }
          out.dGamma(d, k, i, j) = dv;
          out.dGamma(d, k, j, i) = dv;
        }
      }
    }
  }

  out.trace = Vector::Zero(m);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k) out.trace(i) += out.gamma_full(k, i, k);

  out.tracefree = Tensor3(m);
  const double c = 1.0 / (n + 2);
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        out.tracefree(k, i, j) = out.gamma_full(k, i, j) -
                                 c * (out.trace(i) * (j == k ? 1.0 : 0.0) +
                                      out.trace(j) * (i == k ? 1.0 : 0.0));
  return out;
}

ChristoffelData projective_change(const ChristoffelData& gamma, const Vector& upsilon) {
  const int m = gamma.gamma_full.dim();
  if (upsilon.size() != m)
    throw std::runtime_error("projective change: dimension mismatch");
  ChristoffelData out;
  out.point = gamma.point;
  out.gamma_full = Tensor3(m);
  out.tracefree = gamma.tracefree;
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        out.gamma_full(k, i, j) = gamma.gamma_full(k, i, j) +
                                  upsilon(i) * (j == k ? 1.0 : 0.0) +
                                  upsilon(j) * (i == k ? 1.0 : 0.0);
  out.trace = gamma.trace + (m + 1) * upsilon;  // n + 2 = m + 1
  return out;
}

CurvatureData curvature(const MetricSpec& spec, const Vector& point) {
  const int m = spec.dim;
  const int n = spec.n();
  ChristoffelData ch = levi_civita(spec, point);
  MetricAtPoint mp = metric_at(spec, point);

  CurvatureData out;
  out.riemann = Tensor4(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      for (int k = 0; k < m; ++k) {
        for (int l = 0; l < m; ++l) {
          double r = ch.dGamma(i, k, j, l) - ch.dGamma(j, k, i, l);
          for (int s = 0; s < m; ++s)
            r += ch.gamma_full(k, i, s) * ch.gamma_full(s, j, l) -
                 ch.gamma_full(k, j, s) * ch.gamma_full(s, i, l);
          out.riemann(i, j, k, l) = r;
        }
      }
    }
  }

  out.ricci = Matrix::Zero(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) out.ricci(i, j) += out.riemann(k, i, k, j);

  out.scalar = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) out.scalar += mp.g_inv(i, j) * out.ricci(i, j);

  out.schouten = out.ricci / n;
  out.schouten_trace = out.scalar / n;
  return out;
}

DensityRep tau_density(const MetricSpec& spec) {
  const double expo = -1.0 / (spec.n() + 2);
  MetricSpec copy = spec;
  return DensityRep{2.0, [copy, expo](const Vector& p) {
                      MetricAtPoint mp = metric_at(copy, p);
                      return std::pow(std::abs(mp.det_g), expo);
                    }};
}

void validate_spec(const MetricSpec& spec, const std::vector<Vector>& probes) {
  if (spec.dim < 2) throw std::runtime_error("dimension must be at least 2");
  if (static_cast<int>(spec.coords.size()) != spec.dim)
    throw std::runtime_error("coordinates: expected one name per dimension");
  if (spec.signature.first + spec.signature.second != spec.dim)
    throw std::runtime_error("signature: p + q must equal dimension");
  if (static_cast<std::size_t>(spec.dim) * (spec.dim + 1) / 2 != spec.components.size())
    throw std::runtime_error("components: wrong upper-triangle count");
  if (!spec.defining_function)
    throw std::runtime_error("defining_function: missing");
  for (const Vector& p : probes) {
    MetricAtPoint mp = metric_at(spec, p);
    Eigen::SelfAdjointEigenSolver<Matrix> es(mp.g_value);
    int pos = 0, negc = 0;
    for (int i = 0; i < spec.dim; ++i) {
      if (es.eigenvalues()(i) > 0) ++pos;
      if (es.eigenvalues()(i) < 0) ++negc;
    }
    // accept either (p,q) ordering so both (1,n) and (n,1) describe Lorentzian
    bool match = (pos == spec.signature.first && negc == spec.signature.second) ||
                 (pos == spec.signature.second && negc == spec.signature.first);
    if (!match)
      throw std::runtime_error("signature: eigenvalue sign count mismatch at probe point");
    if (spec.defining_value(p) <= 0.0)
      throw std::runtime_error("defining_function: not positive at interior probe point");
  }
}

}  // namespace geomlab
