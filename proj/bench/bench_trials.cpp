// Serial reference against the OpenMP trial scheduler on the same workload.
#include <benchmark/benchmark.h>

#include <omp.h>

#include "polyzero/experiments.hpp"

namespace {

using namespace polyzero;

ExperimentConfig workload(ExperimentKind kind) {
  ExperimentConfig cfg;
  cfg.dist = make_distribution(kind == ExperimentKind::realroot ? "gaussian" : "complex_gaussian");
  cfg.degrees = {125, 250, 500};
  cfg.trials = 16;
  cfg.master_seed = 7;
  return cfg;
}

void BM_serial(benchmark::State& state) {
  const auto kind = static_cast<ExperimentKind>(state.range(0));
  const ExperimentConfig cfg = workload(kind);
  for (auto _ : state) benchmark::DoNotOptimize(run_trials_serial(cfg, kind));
  state.SetLabel(std::string(experiment_name(kind)));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(cfg.degrees.size() * cfg.trials));
}

void BM_parallel(benchmark::State& state) {
  const auto kind = static_cast<ExperimentKind>(state.range(0));
  ExperimentConfig cfg = workload(kind);
  cfg.workers = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(run_trials(cfg, kind));
  state.SetLabel(std::string(experiment_name(kind)));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(cfg.degrees.size() * cfg.trials));
}

void worker_counts(benchmark::internal::Benchmark* b) {
  for (auto kind : {ExperimentKind::angular, ExperimentKind::realroot}) {
    for (int w = 1; w <= omp_get_num_procs(); w *= 2) b->Args({static_cast<long>(kind), w});
  }
}

}  // namespace

BENCHMARK(BM_serial)
    ->Arg(static_cast<long>(ExperimentKind::angular))
    ->Arg(static_cast<long>(ExperimentKind::realroot))
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();
BENCHMARK(BM_parallel)->Apply(worker_counts)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
