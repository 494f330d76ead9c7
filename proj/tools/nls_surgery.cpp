// nls-surgery: experiment harness for the radial mass-critical NLS with
// semi-Strichartz continuation.
//
//   nls-surgery run <experiment-id> --config <file> [--set k=v]...
//   nls-surgery groundstate --d 5 --out <file> [--n N] [--rmax R] [--tol T]
//   nls-surgery classify <trace.csv> [--eps E] [--t0 T]
//
// Exit code 0 iff all checks of the invoked command pass.

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "nls/diagnostics.hpp"
#include "nls/experiments.hpp"
#include "nls/io.hpp"

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for the radial mass-critical NLS "
               "with surgery continuation"};
  app.require_subcommand(1);

  // --- run ---
  auto* run = app.add_subcommand("run", "run a canned experiment (E1..E5)");
  std::string experiment_id, config_path;
  std::vector<std::string> overrides;
  run->add_option("experiment", experiment_id, "experiment id (E1..E5)")->required();
  run->add_option("--config", config_path, "JSON config file");
  run->add_option("--set", overrides, "override config entries, key=value");

  // --- groundstate ---
  auto* gs_cmd = app.add_subcommand("groundstate", "solve and store the ground state");
  int gs_d = 5, gs_n = 4096;
  double gs_rmax = 30.0, gs_tol = 1e-9;
  std::string gs_out;
  gs_cmd->add_option("--d", gs_d, "dimension (>= 4)");
  gs_cmd->add_option("--n", gs_n, "radial nodes (power of two)");
  gs_cmd->add_option("--rmax", gs_rmax, "truncation radius");
  gs_cmd->add_option("--tol", gs_tol, "residual tolerance");
  gs_cmd->add_option("--out", gs_out, "output file")->required();

  // --- classify ---
  auto* cls = app.add_subcommand("classify", "classify a mass trace CSV");
  std::string trace_path;
  double cls_eps = -1, cls_t0 = 0;
  cls->add_option("trace", trace_path, "trace CSV (t and mass columns)")->required();
  cls->add_option("--eps", cls_eps, "jump threshold (default: 1% of initial mass)");
  cls->add_option("--t0", cls_t0, "reference time for one-sided verdicts");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      nls::RunConfig cfg;
      if (!config_path.empty()) cfg = nls::load_config(config_path);
      for (const auto& kv : overrides) nls::apply_override(cfg, kv);
      cfg.experiment = experiment_id;
      if (const char* env = std::getenv("NLS_SURGERY_OUT")) cfg.out_dir = env;
      auto res = nls::run_experiment(experiment_id, cfg);
      std::cout << res.summary_json;
      return res.pass ? 0 : 1;
    }
    if (*gs_cmd) {
      auto grid = nls::make_radial_grid(gs_d, gs_n, gs_rmax);
      auto gs = nls::solve_ground_state(grid, gs_tol);
      nls::save_ground_state(gs_out, gs);
      std::cout << "d=" << gs_d << " n=" << gs_n
                << " rmax=" << nls::format_double(gs_rmax)
                << " mass=" << nls::format_double(gs.mass_Q)
                << " residual=" << nls::format_double(gs.residual)
                << " iterations=" << gs.iterations << "\n";
      return 0;
    }
    if (*cls) {
      nls::MassTrace tr = nls::read_trace_csv(trace_path);
      if (tr.size() == 0) {
        std::cerr << "empty trace\n";
        return 2;
      }
      double eps = cls_eps > 0 ? cls_eps : 0.01 * tr.masses.front();
      auto rep = nls::classify_mass_trace(tr, cls_t0, eps);
      std::cout << "samples=" << tr.size() << " eps=" << nls::format_double(rep.eps)
                << " dt=" << nls::format_double(rep.dt) << "\n";
      std::cout << "constant_mass=" << (rep.constant_mass ? "yes" : "no")
                << " continuous_mass=" << (rep.continuous_mass ? "yes" : "no")
                << " one_sided_continuous="
                << (rep.one_sided_continuous ? "yes" : "no") << "\n";
      for (const auto& j : rep.jumps)
        std::cout << "jump t=" << nls::format_double(j.t)
                  << " size=" << nls::format_double(j.size) << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
