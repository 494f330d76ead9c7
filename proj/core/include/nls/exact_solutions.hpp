#pragma once

#include "nls/field.hpp"
#include "nls/ground_state.hpp"

namespace nls {

/// Pseudoconformal blowup profile
///   u(t,r) = |t|^{-d/2} e^{-i/t} e^{i r^2 / 4t} Q(r/|t|),
/// an exact solution singular at t = 0.  Q(r/|t|) is sampled by monotone
/// cubic interpolation of the stored profile (zero beyond r_max |t|).
/// Rejects |t| so small that fewer than 8 cells span the half-maximum of
/// |u| (unresolved core).
RadialField pseudoconformal(const GroundState& Q, double t, const GridPtr& grid);

/// Rescaled stationary soliton R^{-d/2} e^{i t / R^2} Q(r/R).  Sampled
/// spectrally from the converged frequency coefficients (no interpolation
/// error), so the discrete NLS residual of the sample stays at the
/// certificate level; zero beyond r_max R.
RadialField rescaled_soliton(const GroundState& Q, double R, double t,
                             const GridPtr& grid);

/// Mass-preserving scaling lambda^{-d/2} u(r/lambda) by interpolation.
/// Throws AliasingError when the scaled field concentrates beyond the
/// resolution guard.
RadialField scaled_copy(const RadialField& u, double lambda);

/// Time reparametrization matching scaled_copy: a solution scaled in space
/// by lambda runs on the rescaled clock t/lambda^2.
inline double scaled_time(double t, double lambda) { return t / (lambda * lambda); }

/// Radius at which |u| first drops below half its maximum (interpolated);
/// the unresolved-core rejection threshold is 8 cells across 2x this.
double half_max_radius(const RadialField& u);

}  // namespace nls
