#include <benchmark/benchmark.h>

#include "kntorus/cocycle.hpp"

using namespace kntorus;

namespace {

Exec mode(const benchmark::State& state) { return state.range(0) == 0 ? Exec::serial : Exec::parallel; }

void label(benchmark::State& state) { state.SetLabel(state.range(0) == 0 ? "serial" : "parallel"); }

void BM_StructureTable(benchmark::State& state) {
  const AlgebraParams p = lambda_coefficients(TorusConfig{});
  for (auto _ : state) benchmark::DoNotOptimize(structure_table(p, 12, Indexing::shifted, mode(state)));
  label(state);
}

void BM_CocycleTable(benchmark::State& state) {
  const AlgebraParams p = lambda_coefficients(TorusConfig{});
  for (auto _ : state) benchmark::DoNotOptimize(cocycle_table(p, 10, CocycleMethod::sum, mode(state)));
  label(state);
}

void BM_LevelLines(benchmark::State& state) {
  const TorusConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(level_line_samples(cfg, 0.2, 64, mode(state)));
  label(state);
}

void BM_PairingMatrix(benchmark::State& state) {
  const TorusConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(pairing_matrix(cfg, -5, 5, mode(state)));
  label(state);
}

}  // namespace

BENCHMARK(BM_StructureTable)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CocycleTable)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LevelLines)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PairingMatrix)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
