#include "nls/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace nls {

using json = nlohmann::json;

namespace {

json to_json(const RunConfig& c) {
  return json{
      {"d", c.d},
      {"n", c.n},
      {"r_max", c.r_max},
      {"dt_min", c.dt_min},
      {"dt_max", c.dt_max},
      {"dt_safety", c.dt_safety},
      {"alias_threshold", c.alias_threshold},
      {"gs_tol", c.gs_tol},
      {"S_max", c.S_max},
      {"G_max", c.G_max},
      {"plateau_tol", c.plateau_tol},
      {"window_h", c.window_h},
      {"max_events", c.max_events},
      {"t0", c.t0},
      {"t_end", c.t_end},
      {"e2_amp_ratio", c.e2_amp_ratio},
      {"e2_T", c.e2_T},
      {"e4_amplitude", c.e4_amplitude},
      {"e4_width", c.e4_width},
      {"e4_chirp", c.e4_chirp},
      {"e4_r_max", c.e4_r_max},
      {"experiment", c.experiment},
      {"out_dir", c.out_dir},
      {"checkpoint_every", c.checkpoint_every},
  };
}

template <typename T>
void get_if_present(const json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end()) {
    try {
      out = it->get<T>();
    } catch (const json::exception& e) {
      throw ConfigError(std::string("config key '") + key + "': " + e.what());
    }
  }
}

RunConfig from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");
  RunConfig c;
  json known = to_json(c);
  for (auto& [key, val] : j.items())
    if (!known.contains(key)) throw ConfigError("unknown config key '" + key + "'");
  get_if_present(j, "d", c.d);
  get_if_present(j, "n", c.n);
  get_if_present(j, "r_max", c.r_max);
  get_if_present(j, "dt_min", c.dt_min);
  get_if_present(j, "dt_max", c.dt_max);
  get_if_present(j, "dt_safety", c.dt_safety);
  get_if_present(j, "alias_threshold", c.alias_threshold);
  get_if_present(j, "gs_tol", c.gs_tol);
  get_if_present(j, "S_max", c.S_max);
  get_if_present(j, "G_max", c.G_max);
  get_if_present(j, "plateau_tol", c.plateau_tol);
  get_if_present(j, "window_h", c.window_h);
  get_if_present(j, "max_events", c.max_events);
  get_if_present(j, "t0", c.t0);
  get_if_present(j, "t_end", c.t_end);
  get_if_present(j, "e2_amp_ratio", c.e2_amp_ratio);
  get_if_present(j, "e2_T", c.e2_T);
  get_if_present(j, "e4_amplitude", c.e4_amplitude);
  get_if_present(j, "e4_width", c.e4_width);
  get_if_present(j, "e4_chirp", c.e4_chirp);
  get_if_present(j, "e4_r_max", c.e4_r_max);
  get_if_present(j, "experiment", c.experiment);
  get_if_present(j, "out_dir", c.out_dir);
  get_if_present(j, "checkpoint_every", c.checkpoint_every);
  c.validate();
  return c;
}

}  // namespace

EvolveParams RunConfig::evolve_params() const {
  EvolveParams p;
  p.dt_min = dt_min;
  p.dt_max = dt_max;
  p.dt_safety = dt_safety;
  p.alias_threshold = alias_threshold;
  return p;
}

SurgeryParams RunConfig::surgery_params() const {
  SurgeryParams p;
  p.S_max = S_max;
  p.G_max = G_max;
  p.plateau_tol = plateau_tol;
  p.window_h = window_h;
  p.max_events = max_events;
  return p;
}

void RunConfig::validate() const {
  if (d < 4) throw ConfigError("d must be >= 4");
  if (n < 8 || (n & (n - 1)) != 0) throw ConfigError("n must be a power of two >= 8");
  if (!(r_max > 0)) throw ConfigError("r_max must be positive");
  for (auto [name, v] : {std::pair<const char*, double>{"dt_min", dt_min},
                         {"dt_max", dt_max},
                         {"dt_safety", dt_safety},
                         {"alias_threshold", alias_threshold},
                         {"gs_tol", gs_tol},
                         {"S_max", S_max},
                         {"G_max", G_max},
                         {"plateau_tol", plateau_tol},
                         {"window_h", window_h},
                         {"e4_width", e4_width},
                         {"e4_r_max", e4_r_max}})
    if (!(v > 0)) throw ConfigError(std::string(name) + " must be positive");
  if (dt_min > dt_max) throw ConfigError("dt_min must not exceed dt_max");
  if (max_events < 1) throw ConfigError("max_events must be >= 1");
  if (checkpoint_every < 1) throw ConfigError("checkpoint_every must be >= 1");
}

RunConfig config_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  return from_json(j);
}

std::string config_to_json_text(const RunConfig& c) {
  return to_json(c).dump(2) + "\n";
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return config_from_json_text(ss.str());
}

void apply_override(RunConfig& c, const std::string& kv) {
  auto eq = kv.find('=');
  if (eq == std::string::npos) throw ConfigError("override must be key=value: " + kv);
  std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
  json j = to_json(c);
  if (!j.contains(key)) throw ConfigError("unknown config key '" + key + "'");
  if (j[key].is_string())
    j[key] = val;
  else {
    try {
      j[key] = json::parse(val);
    } catch (const json::exception&) {
      throw ConfigError("cannot parse value for '" + key + "': " + val);
    }
  }
  c = from_json(j);
}

std::uint64_t config_hash(const RunConfig& c) {
  // FNV-1a over the canonical dump (nlohmann orders keys).
  std::string s = to_json(c).dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace nls
