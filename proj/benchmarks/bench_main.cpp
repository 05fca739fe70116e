#include <benchmark/benchmark.h>

#include "krlab/braid.hpp"
#include "krlab/complex.hpp"
#include "krlab/qamod.hpp"
#include "krlab/skein.hpp"

using namespace krlab;

namespace {

const char* kWords[] = {"", "1 1", "1 1 1", "1 -2 1", "1 2 1"};

void BM_Homology(benchmark::State& state) {
  auto w = braid::parse(kWords[state.range(0)], state.range(0) == 0 ? 1 : 0);
  int N = static_cast<int>(state.range(1));
  for (auto _ : state) {
    auto c = complex::build_complex(w, N);
    benchmark::DoNotOptimize(qamod::two_stage_homology(c, {16, false}));
  }
  state.SetLabel(std::string("\"") + kWords[state.range(0)] + "\"");
}
BENCHMARK(BM_Homology)->ArgsProduct({{0, 1, 2, 3}, {1, 2}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Homology)->Args({4, 1})->Unit(benchmark::kMillisecond)->Iterations(1);

void BM_BuildComplex(benchmark::State& state) {
  auto w = braid::parse("1 -2 1 -2", 3);
  for (auto _ : state) benchmark::DoNotOptimize(complex::build_complex(w, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_BuildComplex)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

// A fresh evaluator each time, so the memo does not carry over.
void BM_Skein(benchmark::State& state) {
  auto w = braid::parse(state.range(0) == 0 ? "1 -2 1 -2 1 -2" : "1 2 3 1 2 3 -1 -2 -3", 0);
  for (auto _ : state) benchmark::DoNotOptimize(skein::evaluate(w, 2));
}
BENCHMARK(BM_Skein)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_UnlinkValue(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(skein::unlink_value(static_cast<int>(state.range(0)), 3));
}
BENCHMARK(BM_UnlinkValue)->DenseRange(1, 6);

// Dense slice with random a-exponents: a^e at entry (r, c) when source[c] - target[r] = 2e.
void BM_Smith(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  std::vector<int> source(n), target(n);
  for (std::size_t k = 0; k < n; ++k) {
    source[k] = 2 * static_cast<int>(k % 3) + 2;
    target[k] = -2 * static_cast<int>(k % 2);
  }
  auto m = qamod::SliceMatrix::zero(source, target, 0);
  unsigned seed = 7;
  for (auto& row : m.q)
    for (auto& e : row) {
      seed = seed * 1103515245u + 12345u;
      e = static_cast<int>((seed >> 16) % 7) - 3;
    }
  for (auto _ : state) benchmark::DoNotOptimize(qamod::smith(m, state.range(1) != 0));
}
BENCHMARK(BM_Smith)->ArgsProduct({{8, 16, 32}, {0, 1}})->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
