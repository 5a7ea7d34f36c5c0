#include <benchmark/benchmark.h>

#include "cflobdd/cflobdd.hpp"

using namespace cflobdd;

static void BM_Hadamard(benchmark::State& state) {
  for (auto _ : state) {
    Manager m;
    benchmark::DoNotOptimize(hadamard(m, static_cast<uint32_t>(state.range(0))));
  }
}
BENCHMARK(BM_Hadamard)->DenseRange(4, 20, 4);

static void BM_XorChain(benchmark::State& state) {
  const uint32_t level = static_cast<uint32_t>(state.range(0));
  for (auto _ : state) {
    Manager m;
    Cflobdd x = false_(m, level);
    for (uint64_t i = 0; i < (uint64_t{1} << level); ++i) x = xor_(m, x, projection(m, level, i));
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_XorChain)->DenseRange(6, 12, 2)->Unit(benchmark::kMillisecond);

static void BM_EqRelation(benchmark::State& state) {
  for (auto _ : state) {
    Manager m;
    benchmark::DoNotOptimize(eq_relation(m, static_cast<uint32_t>(state.range(0))));
  }
}
BENCHMARK(BM_EqRelation)->DenseRange(4, 20, 4);

static void BM_MatMultHadamard(benchmark::State& state) {
  const uint32_t level = static_cast<uint32_t>(state.range(0));
  for (auto _ : state) {
    Manager m;
    benchmark::DoNotOptimize(matrix_mult(m, hadamard(m, level), hadamard(m, level)));
  }
}
BENCHMARK(BM_MatMultHadamard)->DenseRange(2, 10, 2)->Unit(benchmark::kMillisecond);

static void BM_Ghz(benchmark::State& state) {
  const uint32_t n = static_cast<uint32_t>(state.range(0));
  for (auto _ : state) {
    Manager m(1);
    benchmark::DoNotOptimize(ghz(m, n, 1));
  }
}
BENCHMARK(BM_Ghz)->RangeMultiplier(4)->Range(16, 1024)->Unit(benchmark::kMillisecond);

static void BM_Sample(benchmark::State& state) {
  Manager m(2);
  QuantumRun r = ghz(m, 64, 1);
  Sampler s(m, r.state, norm2_weight);
  std::mt19937_64 rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(s.sample(rng));
}
BENCHMARK(BM_Sample);
BENCHMARK_MAIN();
