#include "nls/exact_solutions.hpp"

#include <cmath>

#include "nls/interp.hpp"
#include "nls/norms.hpp"
#include "nls/transform.hpp"

namespace nls {

namespace {

// Even extension of a radial profile through r = 0 so the interpolant is
// accurate below the first node.
detail::Pchip even_interpolant(const Eigen::VectorXd& r, const Eigen::VectorXd& y) {
  const int n = static_cast<int>(r.size());
  Eigen::VectorXd x2(n + 2), y2(n + 2);
  x2[0] = -r[1]; x2[1] = -r[0];
  y2[0] = y[1];  y2[1] = y[0];
  x2.segment(2, n) = r;
  y2.segment(2, n) = y;
  return detail::Pchip(x2, y2);
}

void require_resolved_core(double r_half, double dr, const char* who) {
  if (2.0 * r_half < 8.0 * dr)
    throw FieldError(std::string(who) +
                     ": core unresolved (< 8 cells across the half-maximum)");
}

}  // namespace

double half_max_radius(const RadialField& u) {
  const auto& g = *u.grid();
  double amax = 0;
  int jmax = 0;
  for (int j = 0; j < g.n; ++j) {
    double a = std::abs(u[j]);
    if (a > amax) { amax = a; jmax = j; }
  }
  if (amax == 0) return 0;
  for (int j = jmax; j < g.n; ++j) {
    double a = std::abs(u[j]);
    if (a < 0.5 * amax) {
      if (j == 0) return g.r[0];
      double a0 = std::abs(u[j - 1]);
      double s = (a0 - 0.5 * amax) / (a0 - a);
      return g.r[j - 1] + s * g.dr;
    }
  }
  return g.r[g.n - 1];
}

RadialField pseudoconformal(const GroundState& Q, double t, const GridPtr& grid) {
  if (t == 0) throw FieldError("pseudoconformal: t must be nonzero");
  const auto& g = *grid;
  const auto& gq = *Q.profile.grid();
  const double at = std::abs(t);

  double r_half_Q = half_max_radius(Q.profile);
  require_resolved_core(at * r_half_Q, g.dr, "pseudoconformal");

  detail::Pchip interp = even_interpolant(gq.r, Q.profile.values().real());
  const double amp = std::pow(at, -0.5 * g.d);
  const Complex ephase = std::exp(Complex(0, -1.0 / t));

  Eigen::VectorXcd u(g.n);
  for (int j = 0; j < g.n; ++j) {
    double rs = g.r[j] / at;
    double q = rs < gq.r_max ? interp(rs) : 0.0;
    Complex chirp = std::exp(Complex(0, g.r[j] * g.r[j] / (4.0 * t)));
    u[j] = amp * ephase * chirp * q;
  }
  return RadialField(grid, u);
}

RadialField rescaled_soliton(const GroundState& Q, double R, double t,
                             const GridPtr& grid) {
  if (!(R > 0)) throw FieldError("rescaled_soliton: R must be positive");
  const auto& g = *grid;
  const auto& gq = *Q.profile.grid();
  auto T = RadialTransform::get(Q.profile.grid());

  double r_half_Q = half_max_radius(Q.profile);
  require_resolved_core(R * r_half_Q, g.dr, "rescaled_soliton");

  // Spectral evaluation of Q at the scaled radii keeps the sample at the
  // residual-certificate level; beyond r_max the series is unusable but Q
  // is below roundoff there, so zero extension is exact at this precision.
  std::vector<double> radii;
  std::vector<int> where;
  radii.reserve(g.n);
  for (int j = 0; j < g.n; ++j) {
    double rs = g.r[j] / R;
    if (rs < gq.r_max) { radii.push_back(rs); where.push_back(j); }
  }
  Eigen::VectorXd rv = Eigen::Map<const Eigen::VectorXd>(radii.data(), radii.size());
  Eigen::VectorXcd qv = T->evaluate_at(Q.coeffs.cast<Complex>(), rv);

  const double amp = std::pow(R, -0.5 * g.d);
  const Complex phase = std::exp(Complex(0, t / (R * R)));
  Eigen::VectorXcd u = Eigen::VectorXcd::Zero(g.n);
  for (size_t i = 0; i < where.size(); ++i)
    u[where[i]] = amp * phase * qv[static_cast<int>(i)].real();
  return RadialField(grid, u);
}

RadialField scaled_copy(const RadialField& u, double lambda) {
  if (!(lambda > 0)) throw FieldError("scaled_copy: lambda must be positive");
  const auto& g = *u.grid();
  if (lambda == 1.0) return u;

  detail::Pchip re = even_interpolant(g.r, u.values().real());
  detail::Pchip im = even_interpolant(g.r, u.values().imag());
  const double amp = std::pow(lambda, -0.5 * g.d);
  Eigen::VectorXcd v(g.n);
  for (int j = 0; j < g.n; ++j) {
    double rs = g.r[j] / lambda;
    v[j] = rs < g.r_max ? amp * Complex(re(rs), im(rs)) : Complex(0, 0);
  }
  RadialField out(u.grid(), v);

  auto T = RadialTransform::get(u.grid());
  auto rep = T->aliasing_report(out);
  if (!rep.ok(T->guard_threshold()))
    throw AliasingError("scaled_copy: scaled field exceeds the resolution guard");
  return out;
}

}  // namespace nls
