#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "nls/field.hpp"
#include "nls/transform.hpp"

namespace nls {

/// One point on a trajectory of iu_t + Delta u = -|u|^{4/d} u.
struct SimState {
  double t = 0;
  RadialField u;
  double dt = 0;
  long step_count = 0;
};

struct Observables {
  double mass = 0;
  double energy = 0;
  double grad_norm = 0;    // L2 norm of the gradient
  double variance = 0;     // integral of |x|^2 |u|^2
  double core_radius = 0;  // radius enclosing 50% of the mass
};

struct EvolveParams {
  double dt_min = 1e-7;
  double dt_max = 1e-3;
  double dt_safety = 0.5;  // dt = dt_safety / (1 + max |u|^{4/d})
  double grad_cap = std::numeric_limits<double>::infinity();
  double alias_threshold = 0.01;
  bool nonlinear = true;   // false: free Schrodinger flow (diagnostics)
};

/// One Strang-split step of size s.dt: exact nonlinear half phase
/// e^{i (dt/2) |u|^{4/d}}, free propagation over dt, second half phase.
/// Both substeps are isometries, so discrete mass is conserved to roundoff.
/// Throws BlowupSuspected when the input trips the resolution guard or the
/// gradient cap (surgery treats this as a breakdown signal).
SimState step(const SimState& s, const TransformPtr& T,
              const EvolveParams& params = {});

/// Hamiltonian E = 1/2 ||grad u||^2 - d/(2(d+2)) ||u||^{2(d+2)/d}_{2(d+2)/d};
/// conserved by the flow.
double energy(const RadialField& u);

/// ||grad u||_2^2 by the frequency-side quadrature.
double grad_norm_sq(const RadialField& u);

Observables observables(const RadialField& u);

/// Amplitude-controlled step size: dt_safety / (1 + max |u|^{4/d}),
/// clamped to [dt_min, dt_max].
double adapt_dt(const SimState& s, const EvolveParams& params);

struct VirialReport {
  double d2V = 0;       // second finite difference of the variance
  double energy = 0;    // energy at the central state
  double rel_dev = 0;   // |d2V - 16 E| / |16 E|
};

/// Glassey virial diagnostic on >= 5 equally spaced states: the second time
/// derivative of the variance should equal 16 E along the nonlinear flow
/// (8 ||grad u||^2 along the free flow; callers compare via grad_norm_sq).
VirialReport virial_check(const std::vector<SimState>& traj);

/// Evolve with adaptive dt until s.t reaches t_target (exactly, last step
/// shortened).  on_step runs after every accepted step.  Guard trips
/// propagate as BlowupSuspected with the state left at the last safe time.
void advance(SimState& s, double t_target, const TransformPtr& T,
             const EvolveParams& params,
             const std::function<void(const SimState&)>& on_step = {});

}  // namespace nls
