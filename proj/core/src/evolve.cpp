#include "nls/evolve.hpp"

#include <cmath>

#include "nls/norms.hpp"

namespace nls {

namespace {

Eigen::VectorXcd half_phase(const Eigen::VectorXcd& u, double dt_half, int d) {
  const double ex = 4.0 / d;
  Eigen::VectorXcd out(u.size());
  for (Eigen::Index j = 0; j < u.size(); ++j) {
    double a = std::abs(u[j]);
    double phase = dt_half * std::pow(a, ex);
    out[j] = u[j] * Complex(std::cos(phase), std::sin(phase));
  }
  return out;
}

}  // namespace

SimState step(const SimState& s, const TransformPtr& T, const EvolveParams& p) {
  const auto& g = *s.u.grid();
  auto rep = T->aliasing_report(s.u);
  if (!rep.ok(p.alias_threshold))
    throw BlowupSuspected("step: resolution guard tripped (spatial " +
                          std::to_string(rep.spatial_edge) + ", spectral " +
                          std::to_string(rep.spectral_tail) + ")");
  if (std::isfinite(p.grad_cap) && grad_norm_sq(s.u) > p.grad_cap * p.grad_cap)
    throw BlowupSuspected("step: gradient norm above cap");

  Eigen::VectorXcd u = s.u.values();
  if (p.nonlinear) u = half_phase(u, 0.5 * s.dt, g.d);
  RadialField mid = T->free_propagate(RadialField(s.u.grid(), u), s.dt);
  u = mid.values();
  if (p.nonlinear) u = half_phase(u, 0.5 * s.dt, g.d);
  return SimState{s.t + s.dt, RadialField(s.u.grid(), u), s.dt, s.step_count + 1};
}

double grad_norm_sq(const RadialField& u) {
  auto T = RadialTransform::get(u.grid());
  const auto& g = *u.grid();
  Eigen::VectorXcd gf = T->frame_forward(T->frame(u));
  double s = 0;
  for (int k = 0; k < g.n_xi; ++k)
    s += g.xi[k] * g.xi[k] * std::norm(gf[k]);
  return g.sigma * g.dr * s;
}

double energy(const RadialField& u) {
  const auto& g = *u.grid();
  const double q = 2.0 * (g.d + 2) / g.d;
  double pot = 0;
  for (int j = 0; j < g.n; ++j) pot += g.w[j] * std::pow(std::abs(u[j]), q);
  pot *= g.sigma;
  return 0.5 * grad_norm_sq(u) - (g.d / (2.0 * (g.d + 2))) * pot;
}

Observables observables(const RadialField& u) {
  const auto& g = *u.grid();
  Observables o;
  o.mass = mass(u);
  o.energy = energy(u);
  o.grad_norm = std::sqrt(grad_norm_sq(u));
  double var = 0;
  for (int j = 0; j < g.n; ++j)
    var += g.w[j] * g.r[j] * g.r[j] * std::norm(u[j]);
  o.variance = g.sigma * var;
  double half = 0.5 * o.mass, cum = 0;
  o.core_radius = g.r[g.n - 1];
  for (int j = 0; j < g.n; ++j) {
    cum += g.sigma * g.w[j] * std::norm(u[j]);
    if (cum >= half) { o.core_radius = g.r[j]; break; }
  }
  return o;
}

double adapt_dt(const SimState& s, const EvolveParams& p) {
  const auto& g = *s.u.grid();
  double amax = 0;
  for (int j = 0; j < g.n; ++j) amax = std::max(amax, std::abs(s.u[j]));
  double rate = std::pow(amax, 4.0 / g.d);
  double dt = p.dt_safety / (1.0 + rate);
  return std::min(p.dt_max, std::max(p.dt_min, dt));
}

VirialReport virial_check(const std::vector<SimState>& traj) {
  const int m = static_cast<int>(traj.size());
  if (m < 5) throw FieldError("virial_check: need >= 5 equally spaced states");
  double h = traj[1].t - traj[0].t;
  for (int i = 1; i < m; ++i)
    if (std::abs(traj[i].t - traj[i - 1].t - h) > 1e-9 * std::abs(h))
      throw FieldError("virial_check: states not equally spaced");
  const int c = m / 2;
  auto var = [&](int i) { return observables(traj[i].u).variance; };
  VirialReport rep;
  rep.d2V = (var(c - 1) - 2.0 * var(c) + var(c + 1)) / (h * h);
  rep.energy = energy(traj[c].u);
  double ref = 16.0 * rep.energy;
  rep.rel_dev = std::abs(rep.d2V - ref) / std::abs(ref);
  return rep;
}

void advance(SimState& s, double t_target, const TransformPtr& T,
             const EvolveParams& p,
             const std::function<void(const SimState&)>& on_step) {
  const double dir = t_target >= s.t ? 1.0 : -1.0;
  while (dir * (t_target - s.t) > 1e-14 * std::max(1.0, std::abs(t_target))) {
    double dt = adapt_dt(s, p);
    dt = std::min(dt, dir * (t_target - s.t));
    s.dt = dir * dt;
    s = step(s, T, p);
    if (on_step) on_step(s);
  }
}

}  // namespace nls
