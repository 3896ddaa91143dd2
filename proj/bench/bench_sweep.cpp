// Serial against parallel evaluation of the same theta sweep. Set
// CATALYNET_THREADS to control the worker count of the parallel variant.

#include <benchmark/benchmark.h>

#include <vector>

#include "catalynet/metrics.hpp"
#include "catalynet/parallel.hpp"

namespace {

using catalynet::Execution;

std::vector<double> sweep(Execution mode, std::size_t points) {
  return catalynet::parallel_map(
      points,
      [points](std::size_t i) {
        catalynet::ProbeSpec p;
        p.family = catalynet::Family::pcws;
        p.amplitude = 0.8;
        p.theta = 1.5 * static_cast<double>(i) / static_cast<double>(points);
        p.m = 8;
        p.d = 20;
        p.s = 15;
        return catalynet::effective_qfi(p);
      },
      mode);
}

void BM_SweepSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sweep(Execution::serial, static_cast<std::size_t>(state.range(0))));
}

void BM_SweepParallel(benchmark::State& state) {
  state.counters["workers"] = catalynet::worker_count();
  for (auto _ : state) benchmark::DoNotOptimize(sweep(Execution::parallel, static_cast<std::size_t>(state.range(0))));
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Arg(64)->Arg(256);
BENCHMARK(BM_SweepParallel)->Arg(64)->Arg(256);

BENCHMARK_MAIN();
