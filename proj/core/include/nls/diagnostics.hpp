#pragma once

#include <vector>

#include "nls/evolve.hpp"
#include "nls/field.hpp"

namespace nls {

/// Time series of run diagnostics, one entry per accepted step.
struct MassTrace {
  std::vector<double> times;
  std::vector<double> masses;
  std::vector<double> energies;
  std::vector<double> grad_norms;
  std::vector<double> variances;
  std::vector<double> core_radii;
  std::vector<double> window_norms;

  std::size_t size() const { return times.size(); }
  void push(double t, const Observables& o, double window_norm) {
    times.push_back(t);
    masses.push_back(o.mass);
    energies.push_back(o.energy);
    grad_norms.push_back(o.grad_norm);
    variances.push_back(o.variance);
    core_radii.push_back(o.core_radius);
    window_norms.push_back(window_norm);
  }
};

struct MassJump {
  double t = 0;
  double size = 0;
};

/// Verdicts on the sampled mass function t -> M(u(t)); all statements are
/// at the sampling resolution recorded in dt.
struct ClassReport {
  bool constant_mass = false;
  bool continuous_mass = false;      // no jumps above eps
  bool one_sided_continuous = false; // piecewise constant between jumps
  std::vector<MassJump> jumps;
  double eps = 0;
  double dt = 0;  // median sample spacing
};

/// Detect jumps |dM| > eps between adjacent samples and classify the trace.
ClassReport classify_mass_trace(const MassTrace& trace, double t0, double eps);

/// Exterior endpoint Strichartz norm
///   ( sum_t dt || u(t) 1_{r>R} ||^2_{2d/(d-2)} )^{1/2}
/// over the samples with t in [t_begin, t_end].
double exterior_strichartz(const std::vector<SimState>& traj, double t_begin,
                           double t_end, double R);

/// Dyadic exterior profile c_k = exterior_strichartz(traj, I, 2^k),
/// k = k_min..k_max inclusive; non-increasing in k by nesting.
std::vector<double> dyadic_profile(const std::vector<SimState>& traj,
                                   double t_begin, double t_end, int k_min,
                                   int k_max);

/// Mass decoupling pairing 2 Re<u,v>, the cross term of the cosine rule
/// M(u - v) = M(u) + M(v) - 2 Re<u,v>.
double mass_decoupling(const RadialField& u, const RadialField& v);

/// Max L2 distance to the neighbouring samples at time t; cross-checks the
/// mass-continuity verdicts (a mass jump of size J forces a probe of about
/// sqrt(J)).
double strong_continuity_probe(const std::vector<SimState>& traj, double t);

}  // namespace nls
