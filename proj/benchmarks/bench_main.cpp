#include <benchmark/benchmark.h>

#include <vector>

#include "gkm/circle.hpp"
#include "gkm/dynamics.hpp"
#include "gkm/finite_volume.hpp"
#include "gkm/graph.hpp"
#include "gkm/graphon.hpp"
#include "gkm/initial_density.hpp"
#include "gkm/meanfield.hpp"
#include "gkm/measure.hpp"
#include "gkm/picard.hpp"
#include "gkm/rng.hpp"

using namespace gkm;

namespace {

std::vector<double> random_phases(std::size_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<double> u(n);
  for (double& v : u) v = kTwoPi * rng.uniform();
  return u;
}

void BM_RhsDense(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const OscillatorSystem sys(sample_w_random(Graphon::constant(0.5), n, 1), CouplingFunction::sine());
  const auto u = random_phases(n, 2);
  std::vector<double> out(n);
  for (auto _ : state) {
    rhs(sys, u, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RhsDense)->RangeMultiplier(4)->Range(64, 4096)->Complexity(benchmark::oNSquared);

void BM_RhsDenseCustom(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto d = CouplingFunction::custom([](double x) { return 0.5 * std::sin(x) + 0.25 * std::sin(2 * x); }, 1.0);
  const OscillatorSystem sys(deterministic_graph(Graphon::small_world(0.1, 0.25), n), d);
  const auto u = random_phases(n, 3);
  std::vector<double> out(n);
  for (auto _ : state) {
    rhs(sys, u, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_RhsDenseCustom)->Arg(256)->Arg(1024);

void BM_RhsBlock(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const VelocityFieldSpec spec{cell_average(Graphon::small_world(0.1, 0.25), 16), CouplingFunction::sine()};
  const OscillatorSystem sys = particle_system(spec, m);
  const auto u = random_phases(sys.size(), 4);
  std::vector<double> out(sys.size());
  for (auto _ : state) {
    rhs(sys, u, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(sys.size()));
}
BENCHMARK(BM_RhsBlock)->Arg(64)->Arg(256)->Arg(1024);

void BM_BlDistance(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const auto a = CircleMeasure::equal_weights(random_phases(k, 5));
  const auto b = CircleMeasure::equal_weights(random_phases(k, 6));
  for (auto _ : state) benchmark::DoNotOptimize(bl_distance(a, b));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BlDistance)->RangeMultiplier(8)->Range(8, 32768)->Complexity(benchmark::oNLogN);

void BM_FvStep(benchmark::State& state) {
  const auto g = static_cast<std::size_t>(state.range(0));
  const VelocityFieldSpec spec{cell_average(Graphon::constant(0.5), 8), CouplingFunction::sine()};
  const DensityField rho0 = discretize_density(InitialDensity::von_mises(1.0, 0.0), 8, g);
  FvOptions opts;
  opts.dt = 0.5 * rho0.du();
  opts.horizon = 10 * opts.dt;
  opts.record_every = 10;
  for (auto _ : state) benchmark::DoNotOptimize(solve_fv(spec, rho0, opts));
  state.SetItemsProcessed(state.iterations() * 10);
}
BENCHMARK(BM_FvStep)->Arg(128)->Arg(512);

void BM_PicardIteration(benchmark::State& state) {
  const VelocityFieldSpec spec{cell_average(Graphon::constant(0.5), 8), CouplingFunction::sine()};
  const MeasureFamily mu0 = initial_family(InitialDensity::two_cluster(0.0, 1.5, 0.5), 8, 64, InitMode::quantile);
  PicardOptions opts;
  opts.max_iterations = 1;
  for (auto _ : state) benchmark::DoNotOptimize(picard_solve(spec, mu0, opts));
}
BENCHMARK(BM_PicardIteration);

}  // namespace

BENCHMARK_MAIN();
