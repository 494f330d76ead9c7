#include <benchmark/benchmark.h>

#include <cmath>

#include "nls/evolve.hpp"
#include "nls/norms.hpp"
#include "nls/transform.hpp"

namespace {

nls::GridPtr bench_grid(int n) { return nls::make_radial_grid(5, n, 30.0); }

nls::RadialField gaussian(const nls::GridPtr& g) {
  Eigen::VectorXcd v(g->n);
  for (int j = 0; j < g->n; ++j) v[j] = std::exp(-0.5 * g->r[j] * g->r[j]);
  return nls::RadialField(g, v);
}

void BM_forward(benchmark::State& state) {
  auto g = bench_grid(static_cast<int>(state.range(0)));
  auto T = nls::RadialTransform::get(g);
  auto u = gaussian(g);
  for (auto _ : state) benchmark::DoNotOptimize(T->forward(u));
}
BENCHMARK(BM_forward)->Arg(1024)->Arg(2048)->Arg(4096);

void BM_roundtrip(benchmark::State& state) {
  auto g = bench_grid(static_cast<int>(state.range(0)));
  auto T = nls::RadialTransform::get(g);
  auto u = gaussian(g);
  for (auto _ : state) benchmark::DoNotOptimize(T->inverse(T->forward(u)));
}
BENCHMARK(BM_roundtrip)->Arg(1024)->Arg(2048)->Arg(4096);

void BM_free_propagate(benchmark::State& state) {
  auto g = bench_grid(static_cast<int>(state.range(0)));
  auto T = nls::RadialTransform::get(g);
  auto u = gaussian(g);
  for (auto _ : state) benchmark::DoNotOptimize(T->free_propagate(u, 1e-3));
}
BENCHMARK(BM_free_propagate)->Arg(1024)->Arg(2048)->Arg(4096);

void BM_step(benchmark::State& state) {
  auto g = bench_grid(static_cast<int>(state.range(0)));
  auto T = nls::RadialTransform::get(g);
  nls::SimState s{0.0, gaussian(g), 1e-3, 0};
  nls::EvolveParams p;
  for (auto _ : state) {
    s = nls::step(s, T, p);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_step)->Arg(1024)->Arg(2048)->Arg(4096);

}  // namespace

BENCHMARK_MAIN();
