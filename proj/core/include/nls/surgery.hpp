#pragma once

#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "nls/diagnostics.hpp"
#include "nls/evolve.hpp"

namespace nls {

enum class Trigger { window_norm, core_width, grad_cap };

const char* trigger_name(Trigger t);

/// Record of one continuation event.
struct SurgeryEvent {
  double t_event = 0;
  double mass_before = 0;
  double mass_after = 0;
  double jump = 0;  // mass_before - mass_after, >= 0
  double excision_radius = 0;
  Trigger trigger = Trigger::core_width;
};

struct SurgeryParams {
  double S_max = 50.0;        // trailing-window Strichartz norm cap
  double G_max = 1e4;         // gradient norm cap
  double plateau_tol = 1e-3;  // exterior-mass plateau test, relative
  double window_h = 0.05;     // trailing window length
  int max_events = 8;
  int stop_after_events = 0;  // > 0: return after this many events
};

struct ContinuationRun {
  double t0 = 0;
  int direction = +1;  // sign of T - t0
  std::vector<SimState> checkpoints;  // one per event plus the final state
  std::vector<SurgeryEvent> events;
  MassTrace trace;

  const SimState& final_state() const { return checkpoints.back(); }
};

/// Breakdown detection over the trailing window: (a) windowed endpoint
/// Strichartz norm above S_max, (b) core collapsed toward the grid scale
/// (core diameter < 8 cells, or the resolution guard about to trip — both
/// detect concentration at the unresolvable scale), (c) gradient norm
/// above G_max.
std::optional<Trigger> detect_breakdown(const std::deque<SimState>& recent,
                                        const SurgeryParams& params);

/// Excise the concentrating core: multiply by a smooth cutoff vanishing on
/// r <= rho* and equal to 1 on r >= 2 rho*, where rho* is the smallest
/// dyadic radius at which the exterior mass profile m(rho) has plateaued
/// (|m(2 rho) - m(rho)| < plateau_tol * mass).  Numerical surrogate of
/// restarting from the weak limit, which drops exactly the mass that
/// escapes to zero scale.
std::pair<RadialField, SurgeryEvent> excise_core(const RadialField& u, double t,
                                                 Trigger trigger,
                                                 const SurgeryParams& params);

/// Semi-Strichartz continuation: evolve from (u0, t0) toward T, excising
/// the core and continuing on each breakdown trigger.  The trigger time is
/// localized by bisection between the last safe state and the triggering
/// step, down to dt_min.
ContinuationRun run_semi_strichartz(const RadialField& u0, double t0, double T,
                                    const EvolveParams& ep,
                                    const SurgeryParams& sp);

}  // namespace nls
