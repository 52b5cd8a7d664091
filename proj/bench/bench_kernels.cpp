// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "knotsum/diagram.hpp"
#include "knotsum/statesum.hpp"
#include "knotsum/thimble_batch.hpp"

using namespace knotsum;

namespace {

// A fixed 3-bridge plat wide enough that the labeling sum dominates.
const MorseWord& plat_word() {
  static const MorseWord w = [] {
    std::mt19937_64 rng(42);
    return random_plat(rng, 3, 14);
  }();
  return w;
}

std::vector<ThimbleTask> thimble_tasks() {
  std::vector<ThimbleTask> tasks;
  for (double n : {0.5, 1.5, 2.5, 3.5})
    for (int k = 1; k <= 8; ++k) {
      const auto fam = ExponentFamily::bessel(k, n);
      for (const auto& s : find_saddles(fam, {0, 0, false})) tasks.push_back({fam, s, 0});
    }
  return tasks;
}

void BM_StateSumSerial(benchmark::State& st) {
  const Mode mode = st.range(0) ? Mode::Dense : Mode::Pruned;
  for (auto _ : st) benchmark::DoNotOptimize(framed_sum_serial(plat_word(), default_table(), mode));
}

void BM_StateSumParallel(benchmark::State& st) {
  const Mode mode = st.range(0) ? Mode::Dense : Mode::Pruned;
  const int threads = static_cast<int>(st.range(1));
  for (auto _ : st) benchmark::DoNotOptimize(framed_sum_parallel(plat_word(), default_table(), mode, threads));
}

void BM_ThimbleBatchSerial(benchmark::State& st) {
  const auto tasks = thimble_tasks();
  for (auto _ : st) benchmark::DoNotOptimize(integrate_batch_serial(tasks));
}

void BM_ThimbleBatchParallel(benchmark::State& st) {
  const auto tasks = thimble_tasks();
  const int threads = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(integrate_batch(tasks, {}, threads));
}

}  // namespace

BENCHMARK(BM_StateSumSerial)->ArgNames({"dense"})->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StateSumParallel)
    ->ArgNames({"dense", "threads"})
    ->ArgsProduct({{0, 1}, {1, 2, 4}})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ThimbleBatchSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ThimbleBatchParallel)->ArgName("threads")->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
