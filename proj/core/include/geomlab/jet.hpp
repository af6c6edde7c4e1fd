#pragma once

#include <cmath>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "geomlab/expr.hpp"

namespace geomlab {

/// Order-2 truncated Taylor scalar in m variables: value, gradient and
/// Hessian. The Hessian is stored as its upper triangle, so symmetry is
/// structural.
class Jet2 {
public:
  Jet2() = default;

  explicit Jet2(int dim, double value = 0.0)
      : dim_(dim),
        value_(value),
        grad_(Eigen::VectorXd::Zero(dim)),
        hess_(static_cast<std::size_t>(dim) * (dim + 1) / 2, 0.0) {}

  /// Coordinate seed: value point[index], gradient e_index, zero Hessian.
  static Jet2 seed(std::span<const double> point, int index) {
    if (index < 0 || static_cast<std::size_t>(index) >= point.size())
      throw DomainError("jet seed index out of range");
    Jet2 j(static_cast<int>(point.size()), point[index]);
    j.grad_(index) = 1.0;
    return j;
  }

  static std::vector<Jet2> seeds(std::span<const double> point) {
    std::vector<Jet2> out;
    out.reserve(point.size());
    for (int i = 0; i < static_cast<int>(point.size()); ++i)
      out.push_back(seed(point, i));
    return out;
  }

  int dim() const { return dim_; }
  double value() const { return value_; }
  const Eigen::VectorXd& grad() const { return grad_; }

  double hess(int i, int j) const { return hess_[tri_index(i, j)]; }

  Eigen::MatrixXd hess_matrix() const {
    Eigen::MatrixXd h(dim_, dim_);
    for (int i = 0; i < dim_; ++i)
      for (int j = i; j < dim_; ++j) h(i, j) = h(j, i) = hess(i, j);
    return h;
  }

  friend Jet2 operator+(const Jet2& a, const Jet2& b) {
    Jet2 r = a;
    r.value_ += b.value_;
    r.grad_ += b.grad_;
    for (std::size_t k = 0; k < r.hess_.size(); ++k) r.hess_[k] += b.hess_[k];
    return r;
  }

  friend Jet2 operator-(const Jet2& a, const Jet2& b) {
    Jet2 r = a;
    r.value_ -= b.value_;
    r.grad_ -= b.grad_;
    for (std::size_t k = 0; k < r.hess_.size(); ++k) r.hess_[k] -= b.hess_[k];
    return r;
  }

  friend Jet2 operator*(const Jet2& a, const Jet2& b) {
    Jet2 r(a.dim_);
    r.value_ = a.value_ * b.value_;
    r.grad_ = a.value_ * b.grad_ + b.value_ * a.grad_;
    std::size_t k = 0;
    for (int i = 0; i < a.dim_; ++i) {
      for (int j = i; j < a.dim_; ++j, ++k) {
        r.hess_[k] = a.value_ * b.hess_[k] + b.value_ * a.hess_[k] +
                     a.grad_(i) * b.grad_(j) + b.grad_(i) * a.grad_(j);
      }
    }
    return r;
  }

  friend Jet2 operator/(const Jet2& a, const Jet2& b) { return a * recip_jet(b); }

  friend Jet2 operator*(double s, const Jet2& a) {
    Jet2 r = a;
    r.value_ *= s;
    r.grad_ *= s;
    for (auto& h : r.hess_) h *= s;
    return r;
  }

  /// Chain rule for a scalar function with derivatives (f, fp, fpp) at value().
  Jet2 compose(double f, double fp, double fpp) const {
    Jet2 r(dim_);
    r.value_ = f;
    r.grad_ = fp * grad_;
    std::size_t k = 0;
    for (int i = 0; i < dim_; ++i) {
      for (int j = i; j < dim_; ++j, ++k) {
        r.hess_[k] = fp * hess_[k] + fpp * grad_(i) * grad_(j);
      }
    }
    return r;
  }

  friend Jet2 recip_jet(const Jet2& b) {
    if (b.value_ == 0.0) throw DomainError("division by zero-valued jet");
    double inv = 1.0 / b.value_;
    return b.compose(inv, -inv * inv, 2.0 * inv * inv * inv);
  }

private:
  std::size_t tri_index(int i, int j) const {
    if (i > j) std::swap(i, j);
    return static_cast<std::size_t>(i) * (2 * dim_ - i - 1) / 2 + j;
  }

  int dim_ = 0;
  double value_ = 0.0;
  Eigen::VectorXd grad_;
  std::vector<double> hess_;
};

// Scalar-algebra hooks used by the generic expression evaluator.

inline Jet2 scalar_like(const Jet2& exemplar, double v) {
  return Jet2(exemplar.dim(), v);
}

inline Jet2 neg(const Jet2& a) { return -1.0 * a; }

inline Jet2 recip(const Jet2& a) { return recip_jet(a); }

inline Jet2 sqrt_checked(const Jet2& a) {
  if (a.value() < 0.0) throw DomainError("sqrt of negative value");
  double s = std::sqrt(a.value());
  if (s == 0.0) throw DomainError("sqrt jet at zero has no derivative");
  return a.compose(s, 0.5 / s, -0.25 / (s * s * s));
}

inline Jet2 exp_s(const Jet2& a) {
  double e = std::exp(a.value());
  return a.compose(e, e, e);
}

inline Jet2 log_checked(const Jet2& a) {
  if (a.value() <= 0.0) throw DomainError("log of non-positive value");
  double inv = 1.0 / a.value();
  return a.compose(std::log(a.value()), inv, -inv * inv);
}

inline Jet2 sin_s(const Jet2& a) {
  return a.compose(std::sin(a.value()), std::cos(a.value()), -std::sin(a.value()));
}

inline Jet2 cos_s(const Jet2& a) {
  return a.compose(std::cos(a.value()), -std::sin(a.value()), -std::cos(a.value()));
}

inline Jet2 tanh_s(const Jet2& a) {
  double t = std::tanh(a.value());
  double sech2 = 1.0 - t * t;
  return a.compose(t, sech2, -2.0 * t * sech2);
}

inline Jet2 abs_checked(const Jet2& a) {
  if (a.value() == 0.0) throw DomainError("abs of zero-valued jet is not differentiable");
  return a.value() > 0.0 ? a : -1.0 * a;
}

inline Jet2 pow_const(const Jet2& a, double e) {
  if (a.value() <= 0.0)
    throw DomainError("pow with non-integer exponent requires positive base");
  double v = std::pow(a.value(), e);
  double fp = e * std::pow(a.value(), e - 1.0);
  double fpp = e * (e - 1.0) * std::pow(a.value(), e - 2.0);
  return a.compose(v, fp, fpp);
}

}  // namespace geomlab
