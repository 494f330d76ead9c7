#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "nls/config.hpp"
#include "nls/ground_state.hpp"
#include "nls/io.hpp"
#include "nls/norms.hpp"

using namespace nls;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  fs::path p = fs::temp_directory_path() / "nls_test_io";
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("config: JSON round-trip is bit-exact") {
  RunConfig c;
  c.dt_max = 0.0012345678901234567;
  c.S_max = 1.0 / 3.0;
  c.experiment = "E1";
  c.out_dir = "some/dir";

  std::string text = config_to_json_text(c);
  RunConfig back = config_from_json_text(text);
  CHECK(config_to_json_text(back) == text);
  CHECK(back.dt_max == c.dt_max);
  CHECK(back.S_max == c.S_max);
  CHECK(back.experiment == c.experiment);
  CHECK(config_hash(back) == config_hash(c));
}

TEST_CASE("config: validation and unknown keys") {
  CHECK_THROWS_AS(config_from_json_text("{\"d\": 3}"), ConfigError);
  CHECK_THROWS_AS(config_from_json_text("{\"n\": 1000}"), ConfigError);
  CHECK_THROWS_AS(config_from_json_text("{\"gs_tol\": -1.0}"), ConfigError);
  CHECK_THROWS_AS(config_from_json_text("{\"dt_min\": 0.1, \"dt_max\": 0.01}"),
                  ConfigError);
  CHECK_THROWS_AS(config_from_json_text("{\"no_such_knob\": 1}"), ConfigError);
  CHECK_THROWS_AS(config_from_json_text("{\"d\": \"five\"}"), ConfigError);
  CHECK_THROWS_AS(config_from_json_text("not json"), ConfigError);
  CHECK_THROWS_AS(config_from_json_text("[1,2,3]"), ConfigError);

  // defaults are valid
  RunConfig c = config_from_json_text("{}");
  CHECK(c.d == 5);
  CHECK(c.n == 4096);
}

TEST_CASE("config: --set overrides") {
  RunConfig c;
  apply_override(c, "n=1024");
  CHECK(c.n == 1024);
  apply_override(c, "dt_max=0.0005");
  CHECK(c.dt_max == 0.0005);
  apply_override(c, "experiment=E3");
  CHECK(c.experiment == "E3");

  CHECK_THROWS_AS(apply_override(c, "bogus=1"), ConfigError);
  CHECK_THROWS_AS(apply_override(c, "no_equals_sign"), ConfigError);
  CHECK_THROWS_AS(apply_override(c, "n=abc"), ConfigError);
  CHECK_THROWS_AS(apply_override(c, "n=7"), ConfigError);  // validation

  RunConfig d;
  CHECK(config_hash(c) != config_hash(d));
}

TEST_CASE("format_double: shortest round-trip") {
  for (double x : {0.0, 1.0, -1.0, 1.0 / 3.0, 0.1, 1e-300, 2963.8589649742034,
                   -0.00073242187500000002}) {
    CHECK(std::strtod(format_double(x).c_str(), nullptr) == x);
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(2.0) == "2");
}

TEST_CASE("trace CSV: write then read back") {
  MassTrace tr;
  Observables o;
  for (int i = 0; i < 10; ++i) {
    o.mass = 100.0 / (i + 1);
    o.energy = -1.5 * i;
    o.grad_norm = std::sqrt(2.0) * i;
    o.variance = 7.0;
    o.core_radius = 0.3;
    tr.push(0.01 * i, o, 0.1 * i);
  }
  fs::path p = scratch_dir() / "trace.csv";
  write_trace_csv(p.string(), tr);

  MassTrace back = read_trace_csv(p.string());
  REQUIRE(back.size() == tr.size());
  for (std::size_t i = 0; i < tr.size(); ++i) {
    CHECK(back.times[i] == tr.times[i]);
    CHECK(back.masses[i] == tr.masses[i]);
    CHECK(back.energies[i] == tr.energies[i]);
    CHECK(back.grad_norms[i] == tr.grad_norms[i]);
    CHECK(back.window_norms[i] == tr.window_norms[i]);
  }

  // header-only file: empty trace, still classifiable as an error upstream
  MassTrace empty;
  fs::path pe = scratch_dir() / "empty.csv";
  write_trace_csv(pe.string(), empty);
  CHECK(read_trace_csv(pe.string()).size() == 0);

  CHECK_THROWS(read_trace_csv((scratch_dir() / "missing.csv").string()));
}

TEST_CASE("events CSV: one row per event") {
  std::vector<SurgeryEvent> evs(2);
  evs[0] = SurgeryEvent{-0.15, 2963.0, 12.5, 2950.5, 0.94, Trigger::core_width};
  evs[1] = SurgeryEvent{0.25, 12.5, 1.0, 11.5, 1.88, Trigger::window_norm};
  fs::path p = scratch_dir() / "events.csv";
  write_events_csv(p.string(), evs);

  std::ifstream in(p.string());
  std::string line;
  std::getline(in, line);
  CHECK(line == "t_event,mass_before,mass_after,jump,excision_radius,trigger");
  std::getline(in, line);
  CHECK(line == "-0.15,2963,12.5,2950.5,0.94,core_width");
  std::getline(in, line);
  CHECK(line == "0.25,12.5,1,11.5,1.88,window_norm");
  CHECK(!std::getline(in, line));
}

TEST_CASE("ground-state cache: save, load, key mismatch") {
  auto grid = make_radial_grid(5, 1024, 20.0);
  GroundState gs = solve_ground_state(grid, 1e-9);

  fs::path dir = scratch_dir() / "cache";
  fs::remove_all(dir);
  fs::path p = dir / ground_state_cache_name(5, 1024, 20.0);

  save_ground_state(p.string(), gs);
  GroundState back = load_ground_state(p.string(), grid);
  CHECK(back.mass_Q == gs.mass_Q);
  CHECK(back.residual == gs.residual);
  CHECK(back.iterations == gs.iterations);
  CHECK(l2_distance(back.profile, gs.profile) == 0.0);
  CHECK((back.coeffs - gs.coeffs).cwiseAbs().maxCoeff() == 0.0);

  auto other = make_radial_grid(5, 512, 20.0);
  CHECK_THROWS(load_ground_state(p.string(), other));

  // solve_or_load reuses the cached file
  GroundState again = solve_or_load_ground_state(grid, 1e-9, dir.string());
  CHECK(again.mass_Q == gs.mass_Q);
  CHECK(again.iterations == gs.iterations);
}
