#pragma once

#include <optional>
#include <string>

#include "nls/config.hpp"
#include "nls/diagnostics.hpp"
#include "nls/ground_state.hpp"
#include "nls/surgery.hpp"

namespace nls {

/// Deterministic shortest round-trip formatting for doubles (%.17g trimmed),
/// shared by every writer so identical runs produce identical bytes.
std::string format_double(double x);

/// One row per trace sample: t,mass,energy,grad_norm,variance,core_radius,window_norm.
void write_trace_csv(const std::string& path, const MassTrace& trace);

/// One row per event: t_event,mass_before,mass_after,jump,excision_radius,trigger.
void write_events_csv(const std::string& path,
                      const std::vector<SurgeryEvent>& events);

/// Field checkpoint: t in the header comment, then r,re,im rows.
void write_checkpoint_csv(const std::string& path, const SimState& s);

void write_text_file(const std::string& path, const std::string& contents);

/// Mass trace parsed back from write_trace_csv output (t and mass columns
/// required; aux columns optional), for `classify <trace.csv>`.
MassTrace read_trace_csv(const std::string& path);

/// Ground-state cache, keyed by (d, n, r_max).
std::string ground_state_cache_name(int d, int n, double r_max);
void save_ground_state(const std::string& path, const GroundState& gs);
GroundState load_ground_state(const std::string& path, const GridPtr& grid);

/// Solve, or reuse a cached profile whose key matches; cache_dir may not
/// exist yet (it is created).
GroundState solve_or_load_ground_state(const GridPtr& grid, double tol,
                                       const std::string& cache_dir);

}  // namespace nls
