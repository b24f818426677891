#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "ugks/ugks.hpp"

namespace {

ugks::KineticState sine(const ugks::VelocityGrid& g, const ugks::SpatialGrid& s) {
  return ugks::init_equilibrium([](double x) { return std::sin(2 * std::numbers::pi * x); }, g, s);
}

// Args: K, I.
void BM_Step(benchmark::State& state) {
  const ugks::ModelParams p(1.0, 1.0, 1e-2);
  const auto g = ugks::build_grid(p, static_cast<int>(state.range(0)));
  const auto s = ugks::make_spatial_grid(static_cast<int>(state.range(1)), 1.0);
  ugks::KineticState st = sine(g, s);
  const double dt = 0.9 * ugks::cfl_max_dt(g, p, s);
  for (auto _ : state) {
    st = ugks::step(st, dt, g, s, p).state;
    benchmark::DoNotOptimize(st.f.data().data());
  }
  state.SetItemsProcessed(state.iterations() * g.size() * s.cells);
}
BENCHMARK(BM_Step)->Args({48, 64})->Args({48, 256})->Args({24, 256});

void BM_SubMethods(benchmark::State& state) {
  const ugks::ModelParams p(1.0, 1.0, 1e-2);
  const auto g = ugks::build_grid(p);
  const auto s = ugks::make_spatial_grid(64, 1.0);
  const ugks::KineticState st = sine(g, s);
  const double dt = 0.9 * ugks::cfl_max_dt(g, p, s);
  for (auto _ : state) benchmark::DoNotOptimize(ugks::sub_methods(st, dt, g, s, p));
}
BENCHMARK(BM_SubMethods);

void BM_EigenStructure(benchmark::State& state) {
  const ugks::ModelParams p(1.0, 1.0, 1.0);
  const auto g = ugks::build_grid(p);
  for (auto _ : state) benchmark::DoNotOptimize(ugks::eigen_structure(g, p));
}
BENCHMARK(BM_EigenStructure);

void BM_CriticalBetaBisection(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ugks::critical_beta_bisection(1.0));
}
BENCHMARK(BM_CriticalBetaBisection);

}  // namespace

BENCHMARK_MAIN();
