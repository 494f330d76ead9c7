#pragma once

#include <Eigen/Dense>
#include <complex>

#include "nls/errors.hpp"

namespace nls::detail {

/// Fritsch-Carlson monotone cubic (pchip): shape-preserving C^1 Hermite
/// interpolant; on monotone data the interpolant is monotone, so sampling a
/// decaying profile never introduces spurious oscillation or sign changes.
class Pchip {
 public:
  Pchip(Eigen::VectorXd x, Eigen::VectorXd y) : x_(std::move(x)), y_(std::move(y)) {
    const int n = static_cast<int>(x_.size());
    if (n < 2 || y_.size() != n) throw FieldError("Pchip: need >= 2 matching nodes");
    d_.resize(n);
    Eigen::VectorXd h(n - 1), delta(n - 1);
    for (int i = 0; i < n - 1; ++i) {
      h[i] = x_[i + 1] - x_[i];
      if (!(h[i] > 0)) throw FieldError("Pchip: nodes must increase");
      delta[i] = (y_[i + 1] - y_[i]) / h[i];
    }
    d_[0] = delta[0];
    d_[n - 1] = delta[n - 2];
    for (int i = 1; i < n - 1; ++i) {
      if (delta[i - 1] * delta[i] <= 0) {
        d_[i] = 0;
      } else {
        // weighted harmonic mean keeps the slope inside the monotone region
        double w1 = 2 * h[i] + h[i - 1], w2 = h[i] + 2 * h[i - 1];
        d_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
      }
    }
  }

  /// Evaluate; constant-extrapolates y[0] on the left, 0 beyond the last node.
  double operator()(double x) const {
    const int n = static_cast<int>(x_.size());
    if (x <= x_[0]) return y_[0];
    if (x >= x_[n - 1]) return 0.0;
    int lo = 0, hi = n - 1;
    while (hi - lo > 1) {
      int mid = (lo + hi) / 2;
      (x_[mid] <= x ? lo : hi) = mid;
    }
    double h = x_[lo + 1] - x_[lo], t = (x - x_[lo]) / h;
    double t2 = t * t, t3 = t2 * t;
    return y_[lo] * (2 * t3 - 3 * t2 + 1) + h * d_[lo] * (t3 - 2 * t2 + t) +
           y_[lo + 1] * (-2 * t3 + 3 * t2) + h * d_[lo + 1] * (t3 - t2);
  }

 private:
  Eigen::VectorXd x_, y_, d_;
};

/// Complex profile interpolation: pchip on real and imaginary parts.
class PchipComplex {
 public:
  PchipComplex(const Eigen::VectorXd& x, const Eigen::VectorXcd& y)
      : re_(x, y.real()), im_(x, y.imag()) {}
  std::complex<double> operator()(double x) const { return {re_(x), im_(x)}; }

 private:
  Pchip re_, im_;
};

}  // namespace nls::detail
