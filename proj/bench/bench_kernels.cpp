// Serial-vs-parallel benchmarks for the two data-parallel kernels: the
// intertwining slot sweep and the covering-radius estimator.

#include "ahcert/dynamics.hpp"
#include "ahcert/sampling.hpp"

#include <benchmark/benchmark.h>

using namespace ahcert;

namespace {

const Sequences& ten_seq() {
  static Sequences seq(Schedule::geometric(1, 10), 7);
  return seq;
}

const Sequences& tiny_seq() {
  static Sequences seq(Schedule::explicit_prefix({2, 3, 5, 9, 17, 33}), 6);
  return seq;
}

void bm_intertwine_serial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_intertwine(ten_seq(), n, Exec::Serial).ok());
  }
  state.SetItemsProcessed(state.iterations() * to_i64(ten_seq().l(n + 1)));
}

void bm_intertwine_parallel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_intertwine(ten_seq(), n, Exec::Parallel).ok());
  }
  state.SetItemsProcessed(state.iterations() * to_i64(ten_seq().l(n + 1)));
}

void bm_density_serial(benchmark::State& state) {
  const PointScheme scheme{20260809};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        density_estimate(scheme, tiny_seq(), 0, static_cast<int>(state.range(0)), 500,
                         20260809, Exec::Serial)
            .covering_radius);
  }
}

void bm_density_parallel(benchmark::State& state) {
  const PointScheme scheme{20260809};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        density_estimate(scheme, tiny_seq(), 0, static_cast<int>(state.range(0)), 500,
                         20260809, Exec::Parallel)
            .covering_radius);
  }
}

}  // namespace

BENCHMARK(bm_intertwine_serial)->Arg(4)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_intertwine_parallel)->Arg(4)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_density_serial)->Arg(4)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_density_parallel)->Arg(4)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
