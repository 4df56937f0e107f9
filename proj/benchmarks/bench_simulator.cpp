#include <benchmark/benchmark.h>

#include "srpuf/dataset_io.hpp"
#include "srpuf/metrics.hpp"
#include "srpuf/montecarlo.hpp"

namespace {

using namespace srpuf;

ExperimentConfig config_for(std::int64_t bits, std::int64_t dies) {
  ExperimentConfig cfg;
  cfg.layout = ArrayLayout(static_cast<std::size_t>(bits));
  cfg.n_dies = static_cast<std::size_t>(dies);
  return cfg;
}

void BM_BuildPopulation(benchmark::State& state) {
  const ExperimentConfig cfg = config_for(state.range(0), 1000);
  for (auto _ : state) benchmark::DoNotOptimize(build_population(cfg));
  state.SetItemsProcessed(state.iterations() * 1000 * state.range(0));
}
BENCHMARK(BM_BuildPopulation)->Arg(16)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_RunExperiment(benchmark::State& state) {
  const ExperimentConfig cfg = config_for(state.range(0), 1000);
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment(cfg));
}
BENCHMARK(BM_RunExperiment)->Arg(16)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_UniquenessAllPairs(benchmark::State& state) {
  const CrpDataset ds = run_experiment(config_for(128, state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(uniqueness(ds.references, ComparisonPolicy::all_pairs()));
  }
}
BENCHMARK(BM_UniquenessAllPairs)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_UniquenessSampled(benchmark::State& state) {
  const CrpDataset ds = run_experiment(config_for(128, 1000));
  for (auto _ : state) {
    benchmark::DoNotOptimize(uniqueness(ds.references, ComparisonPolicy::sampled(2000, 1)));
  }
}
BENCHMARK(BM_UniquenessSampled)->Unit(benchmark::kMicrosecond);

void BM_Evaluate(benchmark::State& state) {
  const CrpDataset ds = run_experiment(config_for(128, 1000));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(ds, ComparisonPolicy::all_pairs()));
}
BENCHMARK(BM_Evaluate)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
