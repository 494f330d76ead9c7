#pragma once

#include <Eigen/Dense>
#include <complex>
#include <memory>
#include <utility>

#include "nls/errors.hpp"
#include "nls/grid.hpp"

namespace nls {

using Complex = std::complex<double>;
using GridPtr = std::shared_ptr<const RadialGrid>;

namespace detail {
inline void require_finite(const Eigen::VectorXcd& v, const char* what) {
  if (!v.allFinite()) throw FieldError(std::string(what) + ": non-finite entries");
}
}  // namespace detail

/// Complex radial profile u(r) sampled at the grid nodes; the state of the PDE.
class RadialField {
 public:
  RadialField(GridPtr grid, Eigen::VectorXcd values)
      : grid_(std::move(grid)), v_(std::move(values)) {
    if (v_.size() != grid_->n) throw FieldError("field length != grid size");
    detail::require_finite(v_, "RadialField");
  }

  static RadialField zero(const GridPtr& grid) {
    return RadialField(grid, Eigen::VectorXcd::Zero(grid->n));
  }

  const GridPtr& grid() const { return grid_; }
  const Eigen::VectorXcd& values() const { return v_; }
  Complex operator[](int j) const { return v_[j]; }
  int size() const { return static_cast<int>(v_.size()); }

 private:
  GridPtr grid_;
  Eigen::VectorXcd v_;
};

/// Radial Fourier coefficients u_hat(xi) at the dual nodes.
class SpectralField {
 public:
  SpectralField(GridPtr grid, Eigen::VectorXcd coeffs)
      : grid_(std::move(grid)), c_(std::move(coeffs)) {
    if (c_.size() != grid_->n_xi) throw FieldError("coeff length != dual grid size");
    detail::require_finite(c_, "SpectralField");
  }

  const GridPtr& grid() const { return grid_; }
  const Eigen::VectorXcd& coeffs() const { return c_; }
  int size() const { return static_cast<int>(c_.size()); }

 private:
  GridPtr grid_;
  Eigen::VectorXcd c_;
};

}  // namespace nls
