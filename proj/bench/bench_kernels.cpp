// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <random>

#include "ateich/heights.hpp"
#include "ateich/szpiro.hpp"

using namespace ateich;

namespace {

UnivCoverElt sample_element() {
  std::mt19937_64 rng(11);
  return random_cover_element(rng, 3);
}

void BM_HeightQ_Serial(benchmark::State& state) {
  auto e = sample_element();
  for (auto _ : state) benchmark::DoNotOptimize(height_q_serial(e, static_cast<int>(state.range(0))));
}

void BM_HeightQ_Parallel(benchmark::State& state) {
  auto e = sample_element();
  for (auto _ : state) benchmark::DoNotOptimize(height_q(e, static_cast<int>(state.range(0))));
}

void BM_Cor312_Serial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cor312_suite_serial(0, static_cast<std::size_t>(state.range(0)), 5));
}

void BM_Cor312_Parallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cor312_suite(0, static_cast<std::size_t>(state.range(0)), 5));
}

void BM_StabilizerScan_Serial(benchmark::State& state) {
  auto y = Arithmeticoid::standard(NumberField::parse("Q(i)"));
  for (auto _ : state) benchmark::DoNotOptimize(stabilizer_scan_serial(y, state.range(0)));
}

void BM_StabilizerScan_Parallel(benchmark::State& state) {
  auto y = Arithmeticoid::standard(NumberField::parse("Q(i)"));
  for (auto _ : state) benchmark::DoNotOptimize(stabilizer_scan(y, state.range(0)));
}

void BM_ProductFormula_Serial(benchmark::State& state) {
  auto K = NumberField::parse("Q(sqrt(-3))");
  for (auto _ : state)
    benchmark::DoNotOptimize(product_formula_batch_serial(K, static_cast<std::size_t>(state.range(0)), 5, 1000));
}

void BM_ProductFormula_Parallel(benchmark::State& state) {
  auto K = NumberField::parse("Q(sqrt(-3))");
  for (auto _ : state)
    benchmark::DoNotOptimize(product_formula_batch(K, static_cast<std::size_t>(state.range(0)), 5, 1000));
}

void BM_StabilizedHeight_Serial(benchmark::State& state) {
  auto Q = NumberField::rationals();
  auto y = global_frobenius(Arithmeticoid::standard(Q), 1);
  auto sample = default_stabilizer_sample(Q, state.range(0));
  FieldElement z(Q, Rational(12, 7));
  for (auto _ : state) benchmark::DoNotOptimize(stabilized_height_serial(y, z, sample));
}

void BM_StabilizedHeight_Parallel(benchmark::State& state) {
  auto Q = NumberField::rationals();
  auto y = global_frobenius(Arithmeticoid::standard(Q), 1);
  auto sample = default_stabilizer_sample(Q, state.range(0));
  FieldElement z(Q, Rational(12, 7));
  for (auto _ : state) benchmark::DoNotOptimize(stabilized_height(y, z, sample));
}

}  // namespace

BENCHMARK(BM_HeightQ_Serial)->Arg(4096)->Arg(65536);
BENCHMARK(BM_HeightQ_Parallel)->Arg(4096)->Arg(65536);
BENCHMARK(BM_Cor312_Serial)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Cor312_Parallel)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StabilizerScan_Serial)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StabilizerScan_Parallel)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ProductFormula_Serial)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ProductFormula_Parallel)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StabilizedHeight_Serial)->Arg(30)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StabilizedHeight_Parallel)->Arg(30)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
