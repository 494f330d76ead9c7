#pragma once

#include <cmath>
#include <type_traits>

#if __has_include(<cmath>)
#endif

namespace nls::detail {

// Spherical Bessel j_l and y_l, templated so the ground-state residual
// certificate can run the same kernel in extended precision.

template <typename T>
T sph_j0(T x) {
  if (std::abs(x) < T(1e-4)) {
    T x2 = x * x;
    return T(1) - x2 / T(6) + x2 * x2 / T(120);
  }
  return std::sin(x) / x;
}

template <typename T>
T sph_j1(T x) {
  if (std::abs(x) < T(0.05)) {
    // x/3 (1 - x^2/10 + x^4/280 - x^6/15120)
    T x2 = x * x;
    return x / T(3) * (T(1) - x2 / T(10) + x2 * x2 / T(280) - x2 * x2 * x2 / T(15120));
  }
  return std::sin(x) / (x * x) - std::cos(x) / x;
}

/// j_l(x) by upward recurrence; series fallback keeps small arguments stable.
/// Only small orders are needed (l = (d-3)/2 for odd dimensions).
template <typename T>
T sph_j(int l, T x) {
  if (l == 0) return sph_j0(x);
  if (l == 1) return sph_j1(x);
  if (std::abs(x) < T(0.1) * T(l)) {
    // x^l / (2l+1)!! * (1 - x^2/(2(2l+3)) + x^4/(8(2l+3)(2l+5)))
    T dfact = T(1);
    for (int m = 2 * l + 1; m > 1; m -= 2) dfact *= T(m);
    T x2 = x * x;
    T corr = T(1) - x2 / (T(2) * T(2 * l + 3)) +
             x2 * x2 / (T(8) * T(2 * l + 3) * T(2 * l + 5));
    return std::pow(x, l) / dfact * corr;
  }
  T jm = sph_j0(x), j = sph_j1(x);
  for (int m = 1; m < l; ++m) {
    T jn = T(2 * m + 1) / x * j - jm;
    jm = j;
    j = jn;
  }
  return j;
}

template <typename T>
T sph_y(int l, T x) {
  T ym = std::sin(x) / x;         // y_{-1}
  T y = -std::cos(x) / x;         // y_0
  for (int m = 0; m < l; ++m) {
    T yn = T(2 * m + 1) / x * y - ym;
    ym = y;
    y = yn;
  }
  return y;
}

/// Unitary-frame transform kernel sqrt(x) J_{d/2-1}(x).
template <typename T>
T hankel_kernel(int d, T x) {
  if (d % 2 == 1) {
    const int l = (d - 3) / 2;
    return std::sqrt(T(2) / T(M_PI)) * x * sph_j(l, x);
  }
  double nu = 0.5 * d - 1.0;
  if constexpr (std::is_same_v<T, long double>)
    return std::sqrt(x) * std::cyl_bessel_jl(static_cast<long double>(nu), x);
  else
    return std::sqrt(x) * static_cast<T>(std::cyl_bessel_j(nu, static_cast<double>(x)));
}

/// sqrt(x) Y_{d/2-1}(x), used for the incoming/outgoing half kernels.
inline double hankel_kernel_y(int d, double x) {
  if (d % 2 == 1) {
    const int l = (d - 3) / 2;
    return std::sqrt(2.0 / M_PI) * x * sph_y(l, x);
  }
  return std::sqrt(x) * std::cyl_neumann(0.5 * d - 1.0, x);
}

}  // namespace nls::detail
