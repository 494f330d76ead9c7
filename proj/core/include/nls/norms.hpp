#pragma once

#include <cmath>

#include "nls/field.hpp"

namespace nls {

/// Discrete L^2 mass: sigma * sum_j w_j |u_j|^2.
inline double mass(const RadialField& u) {
  const auto& g = *u.grid();
  double s = 0;
  for (int j = 0; j < g.n; ++j) s += g.w[j] * std::norm(u[j]);
  return g.sigma * s;
}

/// Frequency-side mass, sigma * sum_k wxi_k |u_hat_k|^2.  Plancherel:
/// mass(u) = (2 pi)^{-d} * mass_in_frequency(forward(u)).
inline double mass_in_frequency(const SpectralField& s) {
  const auto& g = *s.grid();
  double acc = 0;
  for (int k = 0; k < g.n_xi; ++k) acc += g.wxi[k] * std::norm(s.coeffs()[k]);
  return g.sigma * acc;
}

/// Spatial L^q norm, q in [2, inf).
inline double lebesgue_norm(const RadialField& u, double q) {
  if (!(q >= 2.0) || !std::isfinite(q)) throw FieldError("lebesgue_norm: q must be in [2, inf)");
  const auto& g = *u.grid();
  double s = 0;
  for (int j = 0; j < g.n; ++j) s += g.w[j] * std::pow(std::abs(u[j]), q);
  return std::pow(g.sigma * s, 1.0 / q);
}

/// Real part of the L^2 pairing <u, v>.
inline double inner_real(const RadialField& u, const RadialField& v) {
  if (u.grid() != v.grid()) throw FieldError("inner_real: grid mismatch");
  const auto& g = *u.grid();
  double s = 0;
  for (int j = 0; j < g.n; ++j)
    s += g.w[j] * (std::conj(u[j]) * v[j]).real();
  return g.sigma * s;
}

inline double l2_distance(const RadialField& u, const RadialField& v) {
  if (u.grid() != v.grid()) throw FieldError("l2_distance: grid mismatch");
  const auto& g = *u.grid();
  double s = 0;
  for (int j = 0; j < g.n; ++j) s += g.w[j] * std::norm(u[j] - v[j]);
  return std::sqrt(g.sigma * s);
}

/// Endpoint spatial exponent 2d/(d-2).
inline double endpoint_exponent(int d) { return 2.0 * d / (d - 2.0); }

}  // namespace nls
