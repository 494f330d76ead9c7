#include "nls/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nls/grid.hpp"

namespace nls {

namespace fs = std::filesystem;

std::string format_double(double x) {
  char buf[32];
  // shortest representation that round-trips
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) return buf;
  }
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

}  // namespace

void write_trace_csv(const std::string& path, const MassTrace& trace) {
  auto out = open_out(path);
  out << "t,mass,energy,grad_norm,variance,core_radius,window_norm\n";
  for (std::size_t i = 0; i < trace.size(); ++i)
    out << format_double(trace.times[i]) << ',' << format_double(trace.masses[i])
        << ',' << format_double(trace.energies[i]) << ','
        << format_double(trace.grad_norms[i]) << ','
        << format_double(trace.variances[i]) << ','
        << format_double(trace.core_radii[i]) << ','
        << format_double(trace.window_norms[i]) << '\n';
}

void write_events_csv(const std::string& path,
                      const std::vector<SurgeryEvent>& events) {
  auto out = open_out(path);
  out << "t_event,mass_before,mass_after,jump,excision_radius,trigger\n";
  for (const auto& e : events)
    out << format_double(e.t_event) << ',' << format_double(e.mass_before) << ','
        << format_double(e.mass_after) << ',' << format_double(e.jump) << ','
        << format_double(e.excision_radius) << ',' << trigger_name(e.trigger)
        << '\n';
}

void write_checkpoint_csv(const std::string& path, const SimState& s) {
  auto out = open_out(path);
  out << "# t=" << format_double(s.t) << " step=" << s.step_count << "\n";
  out << "r,re,im\n";
  const auto& g = *s.u.grid();
  for (int j = 0; j < g.n; ++j)
    out << format_double(g.r[j]) << ',' << format_double(s.u[j].real()) << ','
        << format_double(s.u[j].imag()) << '\n';
}

void write_text_file(const std::string& path, const std::string& contents) {
  auto out = open_out(path);
  out << contents;
}

MassTrace read_trace_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty trace file: " + path);

  std::vector<std::string> cols;
  {
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cols.push_back(c);
  }
  int it = -1, im = -1, ie = -1, ig = -1, iv = -1, ic = -1, iw = -1;
  for (int i = 0; i < static_cast<int>(cols.size()); ++i) {
    if (cols[i] == "t") it = i;
    else if (cols[i] == "mass") im = i;
    else if (cols[i] == "energy") ie = i;
    else if (cols[i] == "grad_norm") ig = i;
    else if (cols[i] == "variance") iv = i;
    else if (cols[i] == "core_radius") ic = i;
    else if (cols[i] == "window_norm") iw = i;
  }
  if (it < 0 || im < 0)
    throw std::runtime_error("trace file needs 't' and 'mass' columns: " + path);

  MassTrace tr;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> vals;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) vals.push_back(std::strtod(c.c_str(), nullptr));
    if (static_cast<int>(vals.size()) <= std::max(it, im)) continue;
    auto pick = [&](int i) { return (i >= 0 && i < (int)vals.size()) ? vals[i] : 0.0; };
    tr.times.push_back(vals[it]);
    tr.masses.push_back(vals[im]);
    tr.energies.push_back(pick(ie));
    tr.grad_norms.push_back(pick(ig));
    tr.variances.push_back(pick(iv));
    tr.core_radii.push_back(pick(ic));
    tr.window_norms.push_back(pick(iw));
  }
  return tr;
}

std::string ground_state_cache_name(int d, int n, double r_max) {
  std::ostringstream ss;
  ss << "gs_d" << d << "_n" << n << "_rmax" << format_double(r_max) << ".csv";
  return ss.str();
}

void save_ground_state(const std::string& path, const GroundState& gs) {
  auto out = open_out(path);
  const auto& g = *gs.profile.grid();
  out << "# d=" << g.d << " n=" << g.n << " r_max=" << format_double(g.r_max)
      << " mass=" << format_double(gs.mass_Q)
      << " residual=" << format_double(gs.residual)
      << " iterations=" << gs.iterations << "\n";
  out << "r,Q\n";
  for (int j = 0; j < g.n; ++j)
    out << format_double(g.r[j]) << ',' << format_double(gs.profile[j].real()) << '\n';
  out << "xi,v\n";
  for (int k = 0; k < g.n_xi; ++k)
    out << format_double(g.xi[k]) << ',' << format_double(gs.coeffs[k]) << '\n';
}

GroundState load_ground_state(const std::string& path, const GridPtr& grid) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open ground-state cache: " + path);
  const auto& g = *grid;
  std::string line;
  if (!std::getline(in, line) || line.rfind("# d=", 0) != 0)
    throw std::runtime_error("bad ground-state cache header: " + path);
  int d = 0, n = 0, iterations = 0;
  double r_max = 0, massq = 0, residual = 0;
  if (std::sscanf(line.c_str(),
                  "# d=%d n=%d r_max=%lf mass=%lf residual=%lf iterations=%d",
                  &d, &n, &r_max, &massq, &residual, &iterations) != 6)
    throw std::runtime_error("bad ground-state cache header: " + path);
  if (d != g.d || n != g.n || r_max != g.r_max)
    throw std::runtime_error("ground-state cache key mismatch: " + path);

  std::getline(in, line);  // "r,Q"
  Eigen::VectorXcd q(g.n);
  for (int j = 0; j < g.n; ++j) {
    if (!std::getline(in, line)) throw std::runtime_error("truncated cache: " + path);
    double r, val;
    if (std::sscanf(line.c_str(), "%lf,%lf", &r, &val) != 2)
      throw std::runtime_error("bad cache row: " + path);
    q[j] = val;
  }
  std::getline(in, line);  // "xi,v"
  Eigen::VectorXd v(g.n_xi);
  for (int k = 0; k < g.n_xi; ++k) {
    if (!std::getline(in, line)) throw std::runtime_error("truncated cache: " + path);
    double xi, val;
    if (std::sscanf(line.c_str(), "%lf,%lf", &xi, &val) != 2)
      throw std::runtime_error("bad cache row: " + path);
    v[k] = val;
  }
  return GroundState{RadialField(grid, q), v, massq, residual, iterations};
}

GroundState solve_or_load_ground_state(const GridPtr& grid, double tol,
                                       const std::string& cache_dir) {
  const auto& g = *grid;
  fs::path p = fs::path(cache_dir) / ground_state_cache_name(g.d, g.n, g.r_max);
  if (fs::exists(p)) {
    GroundState gs = load_ground_state(p.string(), grid);
    if (gs.residual < tol) return gs;
  }
  GroundState gs = solve_ground_state(grid, tol);
  save_ground_state(p.string(), gs);
  return gs;
}

}  // namespace nls
