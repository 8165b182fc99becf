#include <benchmark/benchmark.h>

#include <random>

#include "jcpure/scenario.hpp"

using namespace jcpure;

namespace {

ScenarioConfig base(ScenarioKind kind, std::size_t steps) {
  ScenarioConfig cfg;
  cfg.scenario = kind;
  cfg.steps = steps;
  return resolve(cfg);
}

void BM_Branches(benchmark::State& state) {
  const ScenarioEngine engine(base(ScenarioKind::FieldMixture, 2));
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(engine.branches(t));
    t += 0.01;
  }
}
BENCHMARK(BM_Branches);

void BM_EntropiesAt(benchmark::State& state) {
  const auto b = branches_field_mixture(0.5, 4.0, -4.0, 12.54, 128);
  for (auto _ : state) benchmark::DoNotOptimize(entropies_at(b));
}
BENCHMARK(BM_EntropiesAt);

void BM_Jacobi4(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  SmallHermitian<4> m;
  for (int i = 0; i < 4; ++i) {
    m(i, i) = g(rng);
    for (int j = i + 1; j < 4; ++j) {
      m(i, j) = complex(g(rng), g(rng));
      m(j, i) = std::conj(m(i, j));
    }
  }
  for (auto _ : state) benchmark::DoNotOptimize(eigh(m));
}
BENCHMARK(BM_Jacobi4);

void BM_DenseOracleEntropy(benchmark::State& state) {
  const auto rho = field_density(branches_field_mixture(0.5, 4.0, -4.0, 12.54, 128));
  for (auto _ : state) benchmark::DoNotOptimize(oracle_field_entropy(rho));
}
BENCHMARK(BM_DenseOracleEntropy)->Unit(benchmark::kMillisecond);

void BM_Simulate(benchmark::State& state) {
  const auto cfg = base(ScenarioKind::FieldMixture, std::size_t(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(simulate(cfg, 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Simulate)->Arg(601)->Unit(benchmark::kMillisecond);

void BM_TwoAtomEvolve(benchmark::State& state) {
  const auto s = initial_atom_field_entangled(4.0, 128);
  for (auto _ : state) benchmark::DoNotOptimize(evolve_two_atom(s, 12.54));
}
BENCHMARK(BM_TwoAtomEvolve);

void BM_WignerGrid(benchmark::State& state) {
  const auto cfg = base(ScenarioKind::FieldMixture, 2);
  WignerGridSpec spec;
  spec.resolution = std::size_t(state.range(0));
  spec.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(run_wigner(cfg, 12.54, spec));
}
BENCHMARK(BM_WignerGrid)->Arg(61)->Arg(121)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
