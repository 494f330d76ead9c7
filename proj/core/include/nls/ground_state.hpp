#pragma once

#include <optional>

#include "nls/field.hpp"
#include "nls/transform.hpp"

namespace nls {

/// Converged ground-state profile Q (positive, decreasing solution of
/// Delta Q + |Q|^{4/d} Q = Q) together with its mass and a residual
/// certificate.
///
/// The primary converged object is the vector of frame spectral
/// coefficients `coeffs` (v with Q = unframe(K^T v)); `profile` holds its
/// double-rounded spatial samples.  The residual certificate is evaluated
/// from `coeffs` in extended precision: storage rounding of the spatial
/// samples is amplified by xi_max^2 under the spectral Laplacian and would
/// otherwise dominate the certificate at the 1e-9 scale, whereas rounding
/// of the frequency coefficients is relative to an exponentially decaying
/// tail and stays harmless.
struct GroundState {
  RadialField profile;
  Eigen::VectorXd coeffs;  // frame spectral coefficients of Q
  double mass_Q = 0;
  double residual = 0;     // extended-precision L2 certificate
  int iterations = 0;
};

/// Petviashvili fixed-point solve of the ground-state equation, run in the
/// frequency frame, followed by a few polishing iterations in extended
/// precision so the certificate is limited by the discretization rather
/// than by double rounding inside the iteration.
///
/// Throws NonConvergence if the certificate does not reach tol (typically:
/// grid too coarse or r_max too small for the requested tolerance).
GroundState solve_ground_state(const GridPtr& grid, double tol,
                               int max_iter = 2000,
                               const RadialField* initial = nullptr);

/// Plain double evaluation of ||Delta Q + |Q|^{4/d} Q - Q||_2 for an
/// arbitrary field; floor ~1e-8 at n = 4096 from storage rounding (see
/// GroundState for the certified version).
double ground_state_residual(const RadialField& Q);

}  // namespace nls
