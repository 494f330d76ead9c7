#pragma once

#include <Eigen/Dense>
#include <memory>
#include <optional>

#include "nls/field.hpp"

namespace nls {

/// Which side of a Littlewood-Paley cut to keep.
enum class LpKind { low, high, band };

/// Incoming/outgoing half of the radial wave decomposition.
enum class WaveDir { outgoing, incoming };

/// Fractions of mass near the edges of the resolvable box.
struct AliasingReport {
  double spatial_edge = 0;   // mass fraction at r > 0.9 r_max
  double spectral_tail = 0;  // mass fraction at xi >= xi_max/10 (top decade)
  bool ok(double threshold) const {
    return spatial_edge <= threshold && spectral_tail <= threshold;
  }
};

/// Radial spectral transform for one grid: the d-dimensional Fourier
/// transform of radial functions, reduced to a Hankel-type kernel of order
/// d/2 - 1 and discretised on the matched uniform grid pair.  In the
/// weighted frame f_j = r_j^{(d-1)/2} u_j the discrete map is an isometry
/// on resolved fields, so the free propagator conserves mass to roundoff.
class RadialTransform {
 public:
  static std::shared_ptr<const RadialTransform> get(const GridPtr& grid);

  SpectralField forward(const RadialField& u) const;
  RadialField inverse(const SpectralField& s) const;

  /// Spectral Laplacian, inverse of (-xi^2) * forward.
  RadialField laplacian(const RadialField& u) const;

  /// e^{it Laplacian}: multiply by e^{-it xi^2} in frequency.
  RadialField free_propagate(const RadialField& u, double t) const;

  /// Littlewood-Paley projection with the smooth bump phi (=1 on |xi|<=1,
  /// supported in |xi|<=11/10).  low: phi(xi/N); high: 1-phi(xi/N);
  /// band: phi(xi/N)-phi(2 xi/N).  low+high is the identity multiplier.
  RadialField lp_project(const RadialField& u, double N, LpKind kind) const;

  /// In/out projection built from the Hankel-function halves of the Bessel
  /// kernel (J = H1/2 + H2/2); P+ + P- reproduces the identity on resolved
  /// radial fields.
  RadialField in_out_project(const RadialField& u, WaveDir dir) const;

  AliasingReport aliasing_report(const RadialField& u) const;
  AliasingReport aliasing_report(const SpectralField& s) const;

  /// Mass fraction threshold for the checked operations; spec default 1%.
  double guard_threshold() const { return guard_threshold_; }

  const GridPtr& grid() const { return grid_; }

  // Frame-level access for solvers: g = K f with f_j = r_j^{(d-1)/2} u_j.
  Eigen::VectorXcd frame(const RadialField& u) const;
  RadialField unframe(const Eigen::VectorXcd& f) const;
  Eigen::VectorXcd frame_forward(const Eigen::VectorXcd& f) const;
  Eigen::VectorXcd frame_inverse(const Eigen::VectorXcd& g) const;

  /// Field values at arbitrary radii from frame spectral coefficients g
  /// (used to evaluate rescaled profiles without interpolation error).
  Eigen::VectorXcd evaluate_at(const Eigen::VectorXcd& g,
                               const Eigen::VectorXd& radii) const;

  /// Smooth LP bump profile, public so tests can probe the multiplier.
  static double phi(double s);

 private:
  explicit RadialTransform(GridPtr grid);
  void check_spatial_guard(const RadialField& u, const char* who) const;
  const Eigen::MatrixXd& y_kernel() const;  // Y-Bessel counterpart of K_, lazy

  GridPtr grid_;
  Eigen::MatrixXd K_;           // n_xi x n kernel matrix (frame scaled)
  Eigen::VectorXd rpow_;        // r^{(d-1)/2}
  Eigen::VectorXcd hat_scale_;  // g -> u_hat conversion
  double guard_threshold_ = 0.01;
  mutable std::shared_ptr<Eigen::MatrixXd> ykern_;  // lazy, built on demand
};

using TransformPtr = std::shared_ptr<const RadialTransform>;

}  // namespace nls
