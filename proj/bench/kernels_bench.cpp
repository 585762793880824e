// Serial vs OpenMP timings for the hot kernels. Arg 0 = serial, 1 = parallel.

#include <benchmark/benchmark.h>

#include <vector>

#include "evwin/anomaly.hpp"
#include "evwin/kernels.hpp"
#include "evwin/nptests.hpp"
#include "evwin/resample.hpp"
#include "evwin/rng.hpp"

namespace {

using evwin::Execution;

Execution mode(const benchmark::State& state) { return state.range(0) ? Execution::Parallel : Execution::Serial; }

std::vector<double> sample(std::uint64_t seed, std::size_t n, double shift = 0.0) {
  evwin::SplitMix64 rng(seed);
  std::vector<double> out(n);
  for (auto& v : out) v = shift + rng.uniform();
  return out;
}

void BM_BootstrapReplicates(benchmark::State& state) {
  const auto pre = sample(1, 70), post = sample(2, 70, 0.3);
  const evwin::BootstrapPlan plan{.iterations = 10'000, .base_seed = 42, .execution = mode(state)};
  for (auto _ : state)
    benchmark::DoNotOptimize(evwin::bootstrap_replicates(pre, post, evwin::mann_whitney_statistic_value, plan));
}

void BM_DominanceCounts(benchmark::State& state) {
  const auto a = sample(3, 4000), b = sample(4, 4000, 0.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(state.range(0) ? evwin::kernels::dominance_counts(a, b)
                                            : evwin::kernels::dominance_counts_serial(a, b));
  }
}

void BM_RbfGram(benchmark::State& state) {
  const auto points = sample(5, 2 * 1000);
  for (auto _ : state) {
    benchmark::DoNotOptimize(state.range(0) ? evwin::kernels::rbf_gram(points, 2, 0.5)
                                            : evwin::kernels::rbf_gram_serial(points, 2, 0.5));
  }
}

void BM_IsolationForest(benchmark::State& state) {
  evwin::FeatureMatrix m;
  m.dims = 2;
  m.values = sample(6, 2 * 500);
  for (std::size_t i = 0; i < 500; ++i) m.dates.push_back(evwin::Date(2024, 1, 1).plus_days(static_cast<long long>(i)));
  const evwin::IsolationForestParams params{.seed = 7, .execution = mode(state)};
  for (auto _ : state) benchmark::DoNotOptimize(evwin::isolation_forest(m, params));
}

}  // namespace

BENCHMARK(BM_BootstrapReplicates)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DominanceCounts)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RbfGram)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IsolationForest)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
