#include "nls/transform.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "nls/kernel.hpp"
#include "nls/norms.hpp"

namespace nls {

namespace {
std::mutex cache_mutex;
std::map<const RadialGrid*, std::weak_ptr<const RadialTransform>> cache;
}  // namespace

std::shared_ptr<const RadialTransform> RadialTransform::get(const GridPtr& grid) {
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto& slot = cache[grid.get()];
  if (auto t = slot.lock()) return t;
  auto t = std::shared_ptr<const RadialTransform>(new RadialTransform(grid));
  slot = t;
  return t;
}

RadialTransform::RadialTransform(GridPtr grid) : grid_(std::move(grid)) {
  const auto& g = *grid_;
  const double scale = std::sqrt(g.dr * g.dxi);
  K_.resize(g.n_xi, g.n);
  for (int k = 0; k < g.n_xi; ++k)
    for (int j = 0; j < g.n; ++j)
      K_(k, j) = scale * detail::hankel_kernel(g.d, g.xi[k] * g.r[j]);

  rpow_ = g.r.array().pow(0.5 * (g.d - 1));
  const double amp = std::pow(2.0 * M_PI, 0.5 * g.d) * std::sqrt(g.dr / g.dxi);
  hat_scale_.resize(g.n_xi);
  for (int k = 0; k < g.n_xi; ++k)
    hat_scale_[k] = amp * std::pow(g.xi[k], -0.5 * (g.d - 1));
}

Eigen::VectorXcd RadialTransform::frame(const RadialField& u) const {
  return u.values().array() * rpow_.array();
}

RadialField RadialTransform::unframe(const Eigen::VectorXcd& f) const {
  return RadialField(grid_, f.array() / rpow_.array());
}

Eigen::VectorXcd RadialTransform::frame_forward(const Eigen::VectorXcd& f) const {
  Eigen::VectorXcd g(grid_->n_xi);
  g.real() = K_ * f.real().matrix();
  g.imag() = K_ * f.imag().matrix();
  return g;
}

Eigen::VectorXcd RadialTransform::frame_inverse(const Eigen::VectorXcd& g) const {
  Eigen::VectorXcd f(grid_->n);
  f.real() = K_.transpose() * g.real().matrix();
  f.imag() = K_.transpose() * g.imag().matrix();
  return f;
}

void RadialTransform::check_spatial_guard(const RadialField& u, const char* who) const {
  const auto& g = *grid_;
  double edge = 0, total = 0;
  for (int j = 0; j < g.n; ++j) {
    double m = g.w[j] * std::norm(u[j]);
    total += m;
    if (g.r[j] > 0.9 * g.r_max) edge += m;
  }
  if (total > 0 && edge > guard_threshold_ * total)
    throw AliasingError(std::string(who) + ": > " +
                        std::to_string(100 * guard_threshold_) +
                        "% of mass in the outer 10% of radius");
}

SpectralField RadialTransform::forward(const RadialField& u) const {
  check_spatial_guard(u, "forward");
  Eigen::VectorXcd g = frame_forward(frame(u));
  return SpectralField(grid_, g.array() * hat_scale_.array());
}

RadialField RadialTransform::inverse(const SpectralField& s) const {
  Eigen::VectorXcd g = s.coeffs().array() / hat_scale_.array();
  return unframe(frame_inverse(g));
}

RadialField RadialTransform::laplacian(const RadialField& u) const {
  check_spatial_guard(u, "laplacian");
  Eigen::VectorXcd g = frame_forward(frame(u));
  g.array() *= (-grid_->xi.array().square()).cast<Complex>();
  return unframe(frame_inverse(g));
}

RadialField RadialTransform::free_propagate(const RadialField& u, double t) const {
  if (t == 0.0) return u;
  Eigen::VectorXcd g = frame_forward(frame(u));
  for (int k = 0; k < grid_->n_xi; ++k) {
    double phase = -t * grid_->xi[k] * grid_->xi[k];
    g[k] *= Complex(std::cos(phase), std::sin(phase));
  }
  return unframe(frame_inverse(g));
}

// Smooth transition between 1 at s<=1 and 0 at s>=11/10, C-infinity via the
// standard exp(-1/t) glue.
double RadialTransform::phi(double s) {
  s = std::abs(s);
  if (s <= 1.0) return 1.0;
  if (s >= 1.1) return 0.0;
  auto h = [](double t) { return t > 0 ? std::exp(-1.0 / t) : 0.0; };
  double t = (s - 1.0) / 0.1;
  return h(1.0 - t) / (h(t) + h(1.0 - t));
}

RadialField RadialTransform::lp_project(const RadialField& u, double N, LpKind kind) const {
  if (!(N > 0)) throw FieldError("lp_project: N must be positive");
  if (kind == LpKind::high) {
    // complementary by construction, so P_{<=N} + P_{>N} = Id exactly
    RadialField low = lp_project(u, N, LpKind::low);
    return RadialField(grid_, u.values() - low.values());
  }
  Eigen::VectorXcd g = frame_forward(frame(u));
  for (int k = 0; k < grid_->n_xi; ++k) {
    double p = phi(grid_->xi[k] / N);
    double m = kind == LpKind::band ? p - phi(2.0 * grid_->xi[k] / N) : p;
    g[k] *= m;
  }
  return unframe(frame_inverse(g));
}

const Eigen::MatrixXd& RadialTransform::y_kernel() const {
  if (!ykern_) {
    const auto& g = *grid_;
    const double scale = std::sqrt(g.dr * g.dxi);
    auto h = std::make_shared<Eigen::MatrixXd>(g.n_xi, g.n);
    for (int k = 0; k < g.n_xi; ++k)
      for (int j = 0; j < g.n; ++j)
        (*h)(k, j) = scale * detail::hankel_kernel_y(g.d, g.xi[k] * g.r[j]);
    ykern_ = h;
  }
  return *ykern_;
}

RadialField RadialTransform::in_out_project(const RadialField& u, WaveDir dir) const {
  // Split the Bessel kernel into its Hankel-function halves,
  //   sqrt(x) J = (sqrt(x) H1 + sqrt(x) H2) / 2 = J-part -+ i Y-part,
  // where H2 (J - iY) carries outgoing waves under this sign convention.
  // Both projections share the same two matvecs, so their sum reproduces
  // the plain transform round-trip with the Y-parts cancelling exactly.
  const Eigen::MatrixXd& Y = y_kernel();
  Eigen::VectorXcd f = frame(u);
  Eigen::VectorXcd gJ = frame_forward(f);
  Eigen::VectorXcd gY(grid_->n_xi);
  gY.real() = Y * f.real().matrix();
  gY.imag() = Y * f.imag().matrix();
  const Complex iu = dir == WaveDir::outgoing ? Complex(0, -1) : Complex(0, 1);
  Eigen::VectorXcd half = 0.5 * (gJ + iu * gY);
  return unframe(frame_inverse(half));
}

AliasingReport RadialTransform::aliasing_report(const RadialField& u) const {
  AliasingReport rep;
  const auto& g = *grid_;
  double edge = 0, total = 0;
  for (int j = 0; j < g.n; ++j) {
    double m = g.w[j] * std::norm(u[j]);
    total += m;
    if (g.r[j] > 0.9 * g.r_max) edge += m;
  }
  rep.spatial_edge = total > 0 ? edge / total : 0.0;

  Eigen::VectorXcd gf = frame_forward(frame(u));
  double tail = 0, ftotal = 0;
  for (int k = 0; k < g.n_xi; ++k) {
    double m = std::norm(gf[k]);
    ftotal += m;
    if (g.xi[k] >= 0.1 * g.xi_max()) tail += m;
  }
  rep.spectral_tail = ftotal > 0 ? tail / ftotal : 0.0;
  return rep;
}

AliasingReport RadialTransform::aliasing_report(const SpectralField& s) const {
  AliasingReport rep;
  const auto& g = *s.grid();
  double tail = 0, total = 0;
  for (int k = 0; k < g.n_xi; ++k) {
    double m = g.wxi[k] * std::norm(s.coeffs()[k]);
    total += m;
    if (g.xi[k] >= 0.1 * g.xi_max()) tail += m;
  }
  rep.spectral_tail = total > 0 ? tail / total : 0.0;
  return rep;
}

Eigen::VectorXcd RadialTransform::evaluate_at(const Eigen::VectorXcd& g,
                                              const Eigen::VectorXd& radii) const {
  const auto& gr = *grid_;
  Eigen::VectorXcd out(radii.size());
  const double scale = std::sqrt(gr.dr * gr.dxi);
  for (int i = 0; i < radii.size(); ++i) {
    double r = radii[i];
    if (!(r > 0)) throw FieldError("evaluate_at: radii must be positive");
    Complex acc(0, 0);
    for (int k = 0; k < gr.n_xi; ++k)
      acc += scale * detail::hankel_kernel(gr.d, gr.xi[k] * r) * g[k];
    out[i] = acc / std::pow(r, 0.5 * (gr.d - 1));
  }
  return out;
}

}  // namespace nls
