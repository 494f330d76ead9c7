#pragma once

#include <Eigen/Dense>
#include <memory>

#include "nls/errors.hpp"

namespace nls {

/// Uniform radial grid on (0, r_max] with midpoint quadrature for
/// d-dimensional integrals of radial functions, plus the dual frequency
/// grid used by the radial spectral transform.
///
/// Nodes sit at r_j = (j+1/2) dr and xi_k = (k+1/2) dxi with dxi = pi/r_max.
/// The dual grid spans the lower half of the Nyquist band; the upper half is
/// kept as dealiasing margin for the spectral Laplacian.
struct RadialGrid {
  int d = 0;          // spatial dimension, d >= 4
  int n = 0;          // radial nodes
  int n_xi = 0;       // dual nodes (= n/2)
  double r_max = 0;
  double dr = 0;
  double dxi = 0;
  double sigma = 0;   // area of the unit sphere S^{d-1}

  Eigen::VectorXd r;   // radial nodes, strictly increasing
  Eigen::VectorXd w;   // quadrature weights: w_j = dr * r_j^{d-1}
  Eigen::VectorXd xi;  // dual nodes
  Eigen::VectorXd wxi; // dual weights: dxi * xi_k^{d-1}

  double xi_max() const { return xi[n_xi - 1]; }
};

std::shared_ptr<const RadialGrid> make_radial_grid(int d, int n, double r_max);

}  // namespace nls
