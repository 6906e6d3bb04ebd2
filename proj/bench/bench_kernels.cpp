// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include <random>

#include "pretrans/kernels.hpp"
#include "pretrans/kripke.hpp"
#include "pretrans/validity.hpp"

using namespace pretrans;

namespace {

BitMatrix random_matrix(std::size_t n, double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution edge(density);
  BitMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (edge(rng)) m.set(i, j);
  return m;
}

void BM_Multiply(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const BitMatrix a = random_matrix(n, 0.05, 1), b = random_matrix(n, 0.05, 2);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::multiply(a, b));
}

void BM_MultiplySerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const BitMatrix a = random_matrix(n, 0.05, 1), b = random_matrix(n, 0.05, 2);
  for (auto _ : state) benchmark::DoNotOptimize(serial::multiply(a, b));
}

void BM_Closure(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const BitMatrix r = random_matrix(n, 1.5 / static_cast<double>(n), 3);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::transitive_closure(r));
}

void BM_ClosureSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const BitMatrix r = random_matrix(n, 1.5 / static_cast<double>(n), 3);
  for (auto _ : state) benchmark::DoNotOptimize(serial::transitive_closure(r));
}

Frame bench_frame(std::size_t n) {
  std::vector<std::pair<World, World>> e;
  for (World i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  e.emplace_back(0, 2);
  return Frame::from_edges(n, e);
}

// Valid on every frame, so the sweep visits every valuation.
const Formula kZeta = Formula::imp(Formula::dia_n(3, Formula::var("p0")), Formula::dia_n(3, Formula::var("p0")));

void BM_Bruteforce(benchmark::State& state) {
  const Frame f = bench_frame(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(valid_bruteforce(f, kZeta));
}

void BM_BruteforceSerial(benchmark::State& state) {
  const Frame f = bench_frame(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(serial::valid_bruteforce(f, kZeta));
}

}  // namespace

BENCHMARK(BM_Multiply)->Arg(256)->Arg(1024)->Arg(2048);
BENCHMARK(BM_MultiplySerial)->Arg(256)->Arg(1024)->Arg(2048);
BENCHMARK(BM_Closure)->Arg(256)->Arg(1024);
BENCHMARK(BM_ClosureSerial)->Arg(256)->Arg(1024);
BENCHMARK(BM_Bruteforce)->Arg(12)->Arg(18);
BENCHMARK(BM_BruteforceSerial)->Arg(12)->Arg(18);

BENCHMARK_MAIN();
