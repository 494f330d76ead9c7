#pragma once

#include <string>

#include "nls/config.hpp"

namespace nls {

struct ExperimentResult {
  bool pass = false;
  std::string summary_json;  // also written to <out_dir>/summary.json
};

/// Canned experiments:
///   E1  pseudoconformal blowup + surgery (mass-jump quantization)
///   E2  sub-threshold global run (no events on [0, T])
///   E3  exterior-smoothing scaling sweep over rescaled solitons
///   E4  virial blowup prediction on a negative-energy Gaussian
///   E5  mass-trace classification on synthetic jump traces
/// Each writes trace/events CSVs plus a summary.json with per-check
/// verdicts into cfg.out_dir; byte-identical outputs for identical configs.
ExperimentResult run_experiment(const std::string& id, const RunConfig& cfg);

/// Relative size of the worst monotonicity violation in a mass trace
/// (0 when non-increasing).
double worst_mass_increase(const MassTrace& trace);

}  // namespace nls
