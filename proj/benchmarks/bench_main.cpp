// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "slf/adversary.hpp"
#include "slf/certifier.hpp"
#include "slf/metrics.hpp"
#include "slf/reduction.hpp"

using namespace slf;

namespace {

void BM_SimulateSimultaneous(benchmark::State& state) {
  Instance inst = exp_simultaneous_sample(static_cast<int>(state.range(0)), 11);
  for (auto _ : state) benchmark::DoNotOptimize(simulate(inst, Policy::slf));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SimulateSimultaneous)->RangeMultiplier(2)->Range(16, 256)->Complexity();

void BM_SimulateSrpt(benchmark::State& state) {
  Instance inst = exp_simultaneous_sample(static_cast<int>(state.range(0)), 11);
  for (auto _ : state) benchmark::DoNotOptimize(simulate(inst, Policy::srpt));
}
BENCHMARK(BM_SimulateSrpt)->Arg(64)->Arg(256);

void BM_GeometricSample(benchmark::State& state) {
  Instance inst = randomized_lb_sample(static_cast<int>(state.range(0)), 5).instance;
  for (auto _ : state) benchmark::DoNotOptimize(simulate(inst, Policy::slf));
}
BENCHMARK(BM_GeometricSample)->DenseRange(4, 8, 2);

void BM_Certificate(benchmark::State& state) {
  Instance inst = randomized_lb_sample(static_cast<int>(state.range(0)), 3).instance;
  Schedule s = simulate(inst, Policy::slf);
  Rat t = event_times(s).back() / 2;
  for (auto _ : state) {
    Certificate c = create_valid_assignment(inst, t);
    benchmark::DoNotOptimize(verify_certificate(c).pass());
  }
}
BENCHMARK(BM_Certificate)->Arg(3)->Arg(5);

void BM_Adversary(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(deterministic_lb_run(Policy::slf, Rat(1, 3), static_cast<int>(state.range(0)), 100));
}
BENCHMARK(BM_Adversary)->DenseRange(1, 5, 2);

void BM_ReductionCheck(benchmark::State& state) {
  Instance inst = exp_simultaneous_sample(static_cast<int>(state.range(0)), 17);
  for (auto _ : state) benchmark::DoNotOptimize(reduction_check(inst, Rat(1, 2)).pass());
}
BENCHMARK(BM_ReductionCheck)->Arg(16)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
