// Serial reference against the OpenMP kernels on word tables of SG_n.
#include <benchmark/benchmark.h>

#include "kusuoka/gasket.hpp"
#include "kusuoka/kernels.hpp"

namespace {

using namespace kusuoka;

const MatrixSystem<double>& sg4() {
  static const auto sys = to_float(generate_system(4));
  return sys;
}

const MatrixSystem<Surd>& sg_exact() {
  static const auto sys = builtin_sg<Surd>();
  return sys;
}

template <class Fn>
void run_table(benchmark::State& state, Fn fn) {
  const auto k = static_cast<std::size_t>(state.range(0));
  std::size_t words = 0;
  for (auto _ : state) {
    auto table = fn(k);
    words = table.size();
    benchmark::DoNotOptimize(table.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * words));
}

void BM_WordTableSerial(benchmark::State& s) {
  run_table(s, [](std::size_t k) { return kernels::serial::word_matrix_table(sg4(), k); });
}
void BM_WordTableOmp(benchmark::State& s) {
  run_table(s, [](std::size_t k) { return kernels::omp::word_matrix_table(sg4(), k); });
}

void BM_NuTableSerial(benchmark::State& s) {
  const auto words = kernels::serial::word_matrix_table(sg4(), static_cast<std::size_t>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(kernels::serial::nu_table(sg4(), words));
  s.SetItemsProcessed(static_cast<std::int64_t>(s.iterations() * words.size()));
}
void BM_NuTableOmp(benchmark::State& s) {
  const auto words = kernels::serial::word_matrix_table(sg4(), static_cast<std::size_t>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(kernels::omp::nu_table(sg4(), words));
  s.SetItemsProcessed(static_cast<std::int64_t>(s.iterations() * words.size()));
}

// Exact arithmetic is where the per-word cost dominates.
void BM_ExactWordTableSerial(benchmark::State& s) {
  run_table(s, [](std::size_t k) { return kernels::serial::word_matrix_table(sg_exact(), k); });
}
void BM_ExactWordTableOmp(benchmark::State& s) {
  run_table(s, [](std::size_t k) { return kernels::omp::word_matrix_table(sg_exact(), k); });
}

}  // namespace

BENCHMARK(BM_WordTableSerial)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WordTableOmp)->DenseRange(3, 5)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_NuTableSerial)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NuTableOmp)->DenseRange(3, 5)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ExactWordTableSerial)->DenseRange(5, 7)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExactWordTableOmp)->DenseRange(5, 7)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
