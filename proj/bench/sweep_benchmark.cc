// Copyright 2026 The DPSC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference loops against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "dpsc/rng.h"
#include "dpsc/sensitivity_probe.h"
#include "dpsc/sweep.h"

namespace {

dpsc::SweepConfig LambdaSweep(int reps) {
  dpsc::SweepConfig config;
  config.lambdas = {1, 10, 100, 1000};
  config.epsilons = {100};
  config.deltas = {0, 1e-6};
  config.sizes = {{10, 10}, {100, 100}};
  config.reps = reps;
  config.seed = 7;
  return config;
}

void BM_Sweep(benchmark::State& state, dpsc::Execution exec) {
  const dpsc::SweepConfig config = LambdaSweep(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    dpsc::SweepResult result = dpsc::RunSweep(config, exec);
    benchmark::DoNotOptimize(result.records.data());
  }
  state.counters["threads"] = exec == dpsc::Execution::kSerial
                                  ? 1
                                  : dpsc::MaxThreads();
}

void BM_Probe(benchmark::State& state, dpsc::Execution exec) {
  for (auto _ : state) {
    dpsc::Rng rng(11);
    dpsc::ProbeResult result = dpsc::EmpiricalSensitivityProbe(
        5, 5, 10.0, static_cast<int>(state.range(0)), rng, exec);
    benchmark::DoNotOptimize(result.max_gap);
  }
}

BENCHMARK_CAPTURE(BM_Sweep, serial, dpsc::Execution::kSerial)
    ->Arg(20)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Sweep, parallel, dpsc::Execution::kParallel)
    ->Arg(20)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Probe, serial, dpsc::Execution::kSerial)
    ->Arg(10000)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Probe, parallel, dpsc::Execution::kParallel)
    ->Arg(10000)
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
