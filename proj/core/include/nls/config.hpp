#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nls/errors.hpp"
#include "nls/evolve.hpp"
#include "nls/surgery.hpp"

namespace nls {

/// One run's worth of knobs; round-trips through JSON bit-exactly.
struct RunConfig {
  // discretization
  int d = 5;
  int n = 4096;
  double r_max = 30.0;

  // time stepping
  double dt_min = 1e-7;
  double dt_max = 1e-3;
  double dt_safety = 0.5;
  double alias_threshold = 0.01;

  // solver tolerances
  double gs_tol = 1e-9;

  // surgery thresholds
  double S_max = 50.0;
  double G_max = 1e4;
  double plateau_tol = 1e-3;
  double window_h = 0.05;
  int max_events = 8;

  // experiment-specific knobs
  double t0 = -1.0;          // E1 start time
  double t_end = 0.5;        // E1 end time
  double e2_amp_ratio = 0.9; // E2: amplitude ratio (mass ratio = square)
  double e2_T = 10.0;
  double e4_amplitude = 18.3; // E4 Gaussian amplitude
  double e4_width = 1.0;
  double e4_chirp = 0.25;     // focusing phase e^{-i b r^2}; 0 = real data
  double e4_r_max = 10.0;     // E4 runs on its own finer grid (same n)

  // harness
  std::string experiment;
  std::string out_dir = "out";
  int checkpoint_every = 200;

  EvolveParams evolve_params() const;
  SurgeryParams surgery_params() const;
  void validate() const;
};

RunConfig config_from_json_text(const std::string& text);
std::string config_to_json_text(const RunConfig& c);

RunConfig load_config(const std::string& path);

/// Apply one `key=value` override (same keys as the JSON schema).
void apply_override(RunConfig& c, const std::string& key_equals_value);

/// FNV-1a hash of the canonical serialization; identifies a run.
std::uint64_t config_hash(const RunConfig& c);

}  // namespace nls
