#include <benchmark/benchmark.h>

#include <random>

#include "disjrw/cover.hpp"

using namespace disjrw;

namespace {

// Random CQs over one binary predicate, each a small graph.
std::vector<CQ> random_cqs(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Predicate e("e", 2);
  std::vector<CQ> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Term> vs;
    for (int k = 0; k < 4; ++k) vs.push_back(default_vars().fresh());
    std::uniform_int_distribution<std::size_t> pick(0, vs.size() - 1);
    CQ q;
    for (int k = 0; k < 5; ++k) q.insert(Atom(e, {vs[pick(rng)], vs[pick(rng)]}));
    out.push_back(std::move(q));
  }
  return out;
}

void BM_MatrixSerial(benchmark::State& state) {
  const auto qs = random_cqs(static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::entailment_matrix_serial(qs));
}

void BM_MatrixParallel(benchmark::State& state) {
  const auto qs = random_cqs(static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::entailment_matrix_parallel(qs));
}

void BM_MoreSpecificSerial(benchmark::State& state) {
  const auto a = random_cqs(static_cast<std::size_t>(state.range(0)), 11);
  const auto b = random_cqs(static_cast<std::size_t>(state.range(0)), 13);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::more_specific_serial(a, b));
}

void BM_MoreSpecificParallel(benchmark::State& state) {
  const auto a = random_cqs(static_cast<std::size_t>(state.range(0)), 11);
  const auto b = random_cqs(static_cast<std::size_t>(state.range(0)), 13);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::more_specific_parallel(a, b));
}

}  // namespace

BENCHMARK(BM_MatrixSerial)->Arg(16)->Arg(64)->Arg(128);
BENCHMARK(BM_MatrixParallel)->Arg(16)->Arg(64)->Arg(128);
BENCHMARK(BM_MoreSpecificSerial)->Arg(64)->Arg(256);
BENCHMARK(BM_MoreSpecificParallel)->Arg(64)->Arg(256);

BENCHMARK_MAIN();
