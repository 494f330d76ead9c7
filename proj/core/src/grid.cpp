#include "nls/grid.hpp"

#include <cmath>

namespace nls {

std::shared_ptr<const RadialGrid> make_radial_grid(int d, int n, double r_max) {
  if (d < 4) throw GridError("dimension must be >= 4");
  if (n < 8 || (n & (n - 1)) != 0) throw GridError("n must be a power of two, n >= 8");
  if (!(r_max > 0)) throw GridError("r_max must be positive");

  auto g = std::make_shared<RadialGrid>();
  g->d = d;
  g->n = n;
  g->n_xi = n / 2;
  g->r_max = r_max;
  g->dr = r_max / n;
  g->dxi = M_PI / r_max;
  g->sigma = 2.0 * std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d);

  g->r.resize(n);
  g->w.resize(n);
  for (int j = 0; j < n; ++j) {
    g->r[j] = (j + 0.5) * g->dr;
    g->w[j] = g->dr * std::pow(g->r[j], d - 1);
  }
  g->xi.resize(g->n_xi);
  g->wxi.resize(g->n_xi);
  for (int k = 0; k < g->n_xi; ++k) {
    g->xi[k] = (k + 0.5) * g->dxi;
    g->wxi[k] = g->dxi * std::pow(g->xi[k], d - 1);
  }
  return g;
}

}  // namespace nls
