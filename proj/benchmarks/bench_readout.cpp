// Copyright 2026 The ppsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "ppsim/presets.hpp"
#include "ppsim/readout.hpp"

namespace {

using namespace ppsim;

void BM_Simulate(benchmark::State& state) {
  const auto& sys = preset(state.range(0) == 2 ? "chloroform" : "hetero-3");
  const auto rho = thermal_deviation(sys);
  const auto settings = tomography_settings(sys.n_spins());
  for (auto _ : state) benchmark::DoNotOptimize(simulate_measurements(rho, sys, settings, 0.01, 1));
}
BENCHMARK(BM_Simulate)->Arg(2)->Arg(3);

void BM_Reconstruct(benchmark::State& state) {
  const auto& sys = preset(state.range(0) == 2 ? "chloroform" : "hetero-3");
  const auto m = simulate_measurements(thermal_deviation(sys), sys, tomography_settings(sys.n_spins()), 0.01, 1);
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct(m, sys));
}
BENCHMARK(BM_Reconstruct)->Arg(2)->Arg(3)->Unit(benchmark::kMicrosecond);

}  // namespace
