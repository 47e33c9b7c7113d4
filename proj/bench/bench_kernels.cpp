#include <benchmark/benchmark.h>

#include <random>

#include "cyclocert/quadratic.hpp"
#include "cyclocert/snf.hpp"
#include "cyclocert/sweeps.hpp"

using namespace cyclocert;

namespace {

IntMatrix random_matrix(std::size_t r, std::size_t c, long bound, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> dist(-bound, bound);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
  return m;
}

void BM_SnfParallel(benchmark::State& st) {
  const auto a = random_matrix(st.range(0), st.range(1), 2, 1);
  for (auto _ : st) benchmark::DoNotOptimize(elementary_divisors(a, {.parallel = true, .parallel_threshold = 256}));
}
void BM_SnfSerial(benchmark::State& st) {
  const auto a = random_matrix(st.range(0), st.range(1), 2, 1);
  for (auto _ : st) benchmark::DoNotOptimize(elementary_divisors(a, {.parallel = false}));
}
void BM_SnfReference(benchmark::State& st) {
  const auto a = random_matrix(st.range(0), st.range(1), 2, 1);
  for (auto _ : st) benchmark::DoNotOptimize(smith_normal_form_reference(a));
}

void BM_SearchOrder2(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(quadratic::search_order_r(2, st.range(0)));
}
void BM_SearchOrder2Serial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(quadratic::search_order_r_serial(2, st.range(0)));
}
void BM_ClassNumberSweep(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(sweeps::class_number_sweep(st.range(0), 200'000));
}
void BM_ClassNumberSweepSerial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(sweeps::class_number_sweep_serial(st.range(0), 200'000));
}
void BM_ExponentSweep(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(sweeps::exponent_sweep(st.range(0)));
}
void BM_ExponentSweepSerial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(sweeps::exponent_sweep_serial(st.range(0)));
}

}  // namespace

BENCHMARK(BM_SnfParallel)->Args({64, 64})->Args({128, 1024})->Args({256, 4096})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SnfSerial)->Args({64, 64})->Args({128, 1024})->Args({256, 4096})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SnfReference)->Args({64, 64})->Args({128, 1024})->Unit(benchmark::kMillisecond);

BENCHMARK(BM_SearchOrder2)->Arg(5000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SearchOrder2Serial)->Arg(5000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClassNumberSweep)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClassNumberSweepSerial)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExponentSweep)->Arg(150)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExponentSweepSerial)->Arg(150)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
