#include <benchmark/benchmark.h>

#include "hypertess/estimators.hpp"
#include "hypertess/percolation.hpp"
#include "hypertess/probe_graph.hpp"

using namespace hypertess;

namespace {

const ProcessSample& probe_sample() {
  static const ProcessSample s = sample_process(3, 2.0, 1.5, 11);
  return s;
}

void BM_probe_graph_reference(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(reference::build_probe_graph(probe_sample(), 0.04));
}

void BM_probe_graph_serial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(build_probe_graph(probe_sample(), 0.04, Execution::serial));
}

void BM_probe_graph_parallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(build_probe_graph(probe_sample(), 0.04, Execution::parallel));
}

void BM_crossing(benchmark::State& st) {
  Execution exec = st.range(0) ? Execution::parallel : Execution::serial;
  for (auto _ : st) benchmark::DoNotOptimize(crossing_probability(2, 3.0, 4.0, 0.01, 200, 5, exec));
}

void BM_two_point(benchmark::State& st) {
  Execution exec = st.range(0) ? Execution::parallel : Execution::serial;
  for (auto _ : st) benchmark::DoNotOptimize(two_point(3, 1.0, 2.0, 5000, 5, exec));
}

}  // namespace

BENCHMARK(BM_probe_graph_reference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_probe_graph_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_probe_graph_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_crossing)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_two_point)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
