#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "cachepower/bounds.hpp"
#include "cachepower/delivery.hpp"
#include "cachepower/power.hpp"
#include "cachepower/sweep.hpp"

using namespace cachepower;

namespace {

SystemConfig bench_config(int users, int files, double cache) {
  SystemConfig c;
  c.users = users;
  c.files = files;
  c.rate = 1.0;
  c.cache = cache;
  c.gains.resize(users);
  for (int k = 1; k <= users; ++k) c.gains[k - 1] = 1.0 / (1.0 + 0.3 * (users - k));
  return c;
}

}  // namespace

static void BM_MinPower(benchmark::State& state) {
  const int users = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  std::vector<double> rates(users), gains(users);
  double g = 0.3;
  for (int k = 0; k < users; ++k) {
    rates[k] = (rng() >> 11) * 0x1.0p-53;
    gains[k] = g;
    g += 0.1;
  }
  for (auto _ : state) benchmark::DoNotOptimize(min_power(rates, gains).total);
}
BENCHMARK(BM_MinPower)->RangeMultiplier(2)->Range(2, 16)->Unit(benchmark::kNanosecond);

static void BM_AveragePower(benchmark::State& state) {
  const int users = static_cast<int>(state.range(0));
  const SystemConfig cfg = bench_config(users, 10, 2.5);
  for (auto _ : state)
    benchmark::DoNotOptimize(average_power(cfg, Scheme::centralized));
}
BENCHMARK(BM_AveragePower)->DenseRange(4, 16, 4)->Unit(benchmark::kMicrosecond);

static void BM_PeakEnumerate(benchmark::State& state) {
  const int users = static_cast<int>(state.range(0));
  const SystemConfig cfg = bench_config(users, 10, 2.5);
  for (auto _ : state)
    benchmark::DoNotOptimize(peak_power(cfg, Scheme::decentralized, PeakMethod::enumerate));
}
BENCHMARK(BM_PeakEnumerate)->DenseRange(4, 16, 4)->Unit(benchmark::kMicrosecond);

static void BM_LowerBoundPeak(benchmark::State& state) {
  const int users = static_cast<int>(state.range(0));
  const SystemConfig cfg = bench_config(users, users, 0.5 * users);
  for (auto _ : state) benchmark::DoNotOptimize(lower_bound_peak(cfg));
}
BENCHMARK(BM_LowerBoundPeak)->DenseRange(4, 16, 4)->Unit(benchmark::kMicrosecond);

static void BM_DeliveryRun(benchmark::State& state) {
  const int users = 4;
  const SystemConfig cfg = bench_config(users, 4, 2.0);  // t = 2
  const DemandVector d{{1, 2, 1, 3}};
  std::uint64_t seed = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(verify_delivery(cfg, d, 2, ++seed).all_ok);
}
BENCHMARK(BM_DeliveryRun)->Unit(benchmark::kMicrosecond);

static void BM_SweepRow(benchmark::State& state) {
  RunSpec spec = parse_spec("K=5\nN=8\ngains_inv=2,1.8,1.6,1.4,1.2\nm_grid=2\n");
  for (auto _ : state) benchmark::DoNotOptimize(compute_sweep(spec).size());
}
BENCHMARK(BM_SweepRow)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
