#include <benchmark/benchmark.h>
#include <curvlab/curvlab.hpp>

#include <random>

using namespace curvlab;

namespace {

Grid grid_for(const benchmark::State& state) { return make_grid(3, static_cast<int>(state.range(0)), 16.0); }

SymTensorField sample(const Grid& g, double amplitude) {
  BumpSampler sampler(3, BumpSampler::Options{1.5, 2.25, 0.5, 1, 3});
  std::mt19937_64 rng(5);
  return sampler.tensor_mixture(rng, amplitude).sample(g);
}

void BM_derivative(benchmark::State& state) {
  const Grid g = grid_for(state);
  std::mt19937_64 rng(1);
  const ScalarField f = BumpSampler(3, BumpSampler::Options{1.5, 2.25, 0.5, 1, 3}).scalar_mixture(rng).sample(g);
  for (auto _ : state) benchmark::DoNotOptimize(derivative(f, 0));
  state.SetItemsProcessed(state.iterations() * g.size());
}

void BM_ricci(benchmark::State& state) {
  const Metric g(sample(grid_for(state), 1e-2));
  for (auto _ : state) benchmark::DoNotOptimize(ricci(g));
}

void BM_assemble_F(benchmark::State& state) {
  const Grid g = grid_for(state);
  const EinParams params(3, 0.0, 1.0);
  const SymTensorField h = sample(g, 1e-2);
  const SymTensorField e = sample(g, 1e-3);
  for (auto _ : state) benchmark::DoNotOptimize(assemble_F(h, e, params));
}

void BM_l0_solve(benchmark::State& state) {
  const Grid g = grid_for(state);
  const L0Symbol symbol(g, EinParams(3, 0.0, 1.0));
  const SymTensorField f = sample(g, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(l0_solve(symbol, f));
}

}  // namespace

BENCHMARK(BM_derivative)->Arg(16)->Arg(32)->Arg(48)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ricci)->Arg(16)->Arg(32)->Arg(48)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_assemble_F)->Arg(16)->Arg(32)->Arg(48)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_l0_solve)->Arg(16)->Arg(32)->Arg(48)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
