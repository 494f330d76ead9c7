#include "nls/surgery.hpp"

#include <cmath>

#include "nls/norms.hpp"

namespace nls {

const char* trigger_name(Trigger t) {
  switch (t) {
    case Trigger::window_norm: return "window_norm";
    case Trigger::core_width: return "core_width";
    case Trigger::grad_cap: return "grad_cap";
  }
  return "?";
}

namespace {

// Everything detection needs about one state, obtained with a single
// forward transform.
struct StateDiag {
  Observables obs;
  AliasingReport rep;
  double normq2 = 0;  // squared endpoint Lebesgue norm, for window norms
};

StateDiag diagnose(const RadialField& u, const TransformPtr& T) {
  const auto& g = *u.grid();
  StateDiag d;
  const double q = endpoint_exponent(g.d);

  double msum = 0, var = 0, edge = 0, pot = 0, lq = 0;
  const double qpot = 2.0 * (g.d + 2) / g.d;
  for (int j = 0; j < g.n; ++j) {
    double a2 = std::norm(u[j]);
    double m = g.w[j] * a2;
    msum += m;
    var += m * g.r[j] * g.r[j];
    if (g.r[j] > 0.9 * g.r_max) edge += m;
    double a = std::sqrt(a2);
    pot += g.w[j] * std::pow(a, qpot);
    lq += g.w[j] * std::pow(a, q);
  }
  d.obs.mass = g.sigma * msum;
  d.obs.variance = g.sigma * var;
  d.rep.spatial_edge = msum > 0 ? edge / msum : 0.0;
  d.normq2 = std::pow(g.sigma * lq, 2.0 / q);

  Eigen::VectorXcd gf = T->frame_forward(T->frame(u));
  double gsum = 0, tail = 0, tot = 0;
  for (int k = 0; k < g.n_xi; ++k) {
    double c2 = std::norm(gf[k]);
    gsum += g.xi[k] * g.xi[k] * c2;
    tot += c2;
    if (g.xi[k] >= 0.1 * g.xi_max()) tail += c2;
  }
  d.rep.spectral_tail = tot > 0 ? tail / tot : 0.0;
  double grad2 = g.sigma * g.dr * gsum;
  d.obs.grad_norm = std::sqrt(grad2);
  d.obs.energy = 0.5 * grad2 - (g.d / (2.0 * (g.d + 2))) * g.sigma * pot;

  double half = 0.5 * d.obs.mass, cum = 0;
  d.obs.core_radius = g.r[g.n - 1];
  for (int j = 0; j < g.n; ++j) {
    cum += g.sigma * g.w[j] * std::norm(u[j]);
    if (cum >= half) { d.obs.core_radius = g.r[j]; break; }
  }
  return d;
}

std::optional<Trigger> check_triggers(const StateDiag& d, double window_norm,
                                      double dr, double guard_threshold,
                                      const SurgeryParams& sp) {
  if (d.obs.mass <= 0) return std::nullopt;
  if (window_norm > sp.S_max) return Trigger::window_norm;
  // Concentration at the grid scale, seen either in space (50%-mass radius
  // below 8 cells) or in frequency (resolution guard about to trip).
  if (d.obs.core_radius < 8.0 * dr) return Trigger::core_width;
  if (!d.rep.ok(guard_threshold)) return Trigger::core_width;
  if (d.obs.grad_norm > sp.G_max) return Trigger::grad_cap;
  return std::nullopt;
}

}  // namespace

std::optional<Trigger> detect_breakdown(const std::deque<SimState>& recent,
                                        const SurgeryParams& sp) {
  if (recent.size() < 2) return std::nullopt;
  const auto& s = recent.back();
  auto T = RadialTransform::get(s.u.grid());
  StateDiag d = diagnose(s.u, T);

  // Trailing window norm (sum over samples inside [t_end - h, t_end]).
  double wn2 = 0;
  double t_end = s.t, t_lo = t_end - sp.window_h;
  for (std::size_t i = 1; i < recent.size(); ++i) {
    double ta = recent[i - 1].t, tb = recent[i].t;
    if (tb <= t_lo) continue;
    double dt = tb - std::max(ta, t_lo);
    const auto& g = *recent[i].u.grid();
    double q = endpoint_exponent(g.d);
    wn2 += dt * std::pow(lebesgue_norm(recent[i].u, q), 2.0);
  }
  return check_triggers(d, std::sqrt(wn2), s.u.grid()->dr,
                        T->guard_threshold(), sp);
}

std::pair<RadialField, SurgeryEvent> excise_core(const RadialField& u, double t,
                                                 Trigger trigger,
                                                 const SurgeryParams& sp) {
  const auto& g = *u.grid();
  double total = mass(u);
  if (total <= 0) throw FieldError("excise_core: empty field");

  // Exterior mass m(rho) via suffix sums.
  Eigen::VectorXd suffix(g.n + 1);
  suffix[g.n] = 0;
  for (int j = g.n - 1; j >= 0; --j)
    suffix[j] = suffix[j + 1] + g.sigma * g.w[j] * std::norm(u[j]);
  auto exterior = [&](double rho) {
    int j = static_cast<int>(std::ceil(rho / g.dr - 0.5));
    j = std::max(0, std::min(g.n, j));
    return suffix[j];
  };

  // Smallest dyadic rho whose annulus [rho, 2 rho] is essentially empty:
  // there the exterior profile has plateaued and the cutoff separates the
  // core from whatever lives further out.  2 rho must stay inside the grid.
  std::vector<double> dyadic;
  for (double rho = g.r_max / 2; rho >= 8.0 * g.dr; rho /= 2) dyadic.push_back(rho);
  double rho_star = -1;
  for (auto it = dyadic.rbegin(); it != dyadic.rend(); ++it) {
    if (std::abs(exterior(2 * *it) - exterior(*it)) < sp.plateau_tol * total) {
      rho_star = *it;
      break;
    }
  }
  if (rho_star < 0)
    throw NoPlateau("excise_core: exterior mass profile never plateaus "
                    "(concentration not scale-separated)");

  // C^2 smoothstep cutoff: 0 on r <= rho*, 1 on r >= 2 rho*.
  Eigen::VectorXcd v(g.n);
  for (int j = 0; j < g.n; ++j) {
    double x = (g.r[j] - rho_star) / rho_star;
    double chi = x <= 0 ? 0.0 : x >= 1 ? 1.0 : x * x * x * (10 + x * (-15 + 6 * x));
    v[j] = chi * u[j];
  }
  RadialField cut(u.grid(), v);

  SurgeryEvent ev;
  ev.t_event = t;
  ev.mass_before = total;
  ev.mass_after = mass(cut);
  ev.jump = ev.mass_before - ev.mass_after;
  ev.excision_radius = rho_star;
  ev.trigger = trigger;
  return {cut, ev};
}

ContinuationRun run_semi_strichartz(const RadialField& u0, double t0, double T,
                                    const EvolveParams& ep,
                                    const SurgeryParams& sp) {
  auto grid = u0.grid();
  auto Tr = RadialTransform::get(grid);
  const double dir = T >= t0 ? 1.0 : -1.0;
  const double q = endpoint_exponent(grid->d);

  // Detection replaces the stepper's own guard here (same thresholds), so
  // the step itself must not throw.
  EvolveParams ep_run = ep;
  ep_run.alias_threshold = 1.0;
  ep_run.grad_cap = std::numeric_limits<double>::infinity();

  ContinuationRun run;
  run.t0 = t0;
  run.direction = dir > 0 ? +1 : -1;

  SimState s{t0, u0, 0, 0};
  std::deque<std::pair<double, double>> win;  // (t, ||u||_q^2)

  auto window_norm = [&](double t_now) {
    double wn2 = 0;
    for (std::size_t i = 1; i < win.size(); ++i) {
      double ta = win[i - 1].first, tb = win[i].first;
      double lo = t_now - dir * sp.window_h;
      double seg = dir > 0 ? tb - std::max(ta, lo) : std::min(ta, lo) - tb;
      if (seg > 0) wn2 += seg * win[i].second;
    }
    return std::sqrt(wn2);
  };
  auto trim_window = [&](double t_now) {
    while (win.size() > 1 && dir * (t_now - win[1].first) > sp.window_h)
      win.pop_front();
  };

  {
    StateDiag d0 = diagnose(s.u, Tr);
    run.trace.push(s.t, d0.obs, 0.0);
    win.emplace_back(s.t, d0.normq2);
  }

  const double t_eps = 1e-12 * std::max(1.0, std::abs(T - t0));
  while (dir * (T - s.t) > t_eps) {
    double dt = adapt_dt(s, ep);
    dt = std::min(dt, dir * (T - s.t));
    SimState prev = s;
    s.dt = dir * dt;
    s = step(s, Tr, ep_run);

    StateDiag d = diagnose(s.u, Tr);
    win.emplace_back(s.t, d.normq2);
    trim_window(s.t);
    double wn = window_norm(s.t);
    auto trig = check_triggers(d, wn, grid->dr, Tr->guard_threshold(), sp);

    if (!trig) {
      run.trace.push(s.t, d.obs, wn);
      continue;
    }

    // Localize the trigger inside (prev.t, s.t] by bisection on the step
    // size, down to dt_min.
    double base_wn2 = 0;
    {
      double w = window_norm(prev.t);
      base_wn2 = w * w;
    }
    double lo = 0, hi = dt;
    SimState at_trig = s;
    while (hi - lo > ep.dt_min) {
      double mid = 0.5 * (lo + hi);
      SimState sm = prev;
      sm.dt = dir * mid;
      sm = step(sm, Tr, ep_run);
      StateDiag dm = diagnose(sm.u, Tr);
      double wm = std::sqrt(base_wn2 + mid * dm.normq2);
      auto tm = check_triggers(dm, wm, grid->dr, Tr->guard_threshold(), sp);
      if (tm) {
        hi = mid;
        at_trig = sm;
        trig = tm;
      } else {
        lo = mid;
      }
    }

    auto [cut, ev] = excise_core(at_trig.u, at_trig.t, *trig, sp);
    run.events.push_back(ev);
    if (static_cast<int>(run.events.size()) > sp.max_events)
      throw MaxEventsExceeded("run_semi_strichartz: more than " +
                              std::to_string(sp.max_events) + " events");

    s = SimState{at_trig.t, cut, 0, at_trig.step_count};
    win.clear();
    StateDiag dc = diagnose(s.u, Tr);
    win.emplace_back(s.t, dc.normq2);
    run.trace.push(s.t, dc.obs, 0.0);
    run.checkpoints.push_back(s);

    if (sp.stop_after_events > 0 &&
        static_cast<int>(run.events.size()) >= sp.stop_after_events)
      break;
    if (dc.obs.mass <= 1e-12 * std::max(1.0, run.trace.masses.front()))
      break;  // nothing left to evolve
  }

  run.checkpoints.push_back(s);
  return run;
}

}  // namespace nls
