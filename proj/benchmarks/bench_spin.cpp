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

#include <numbers>
#include <vector>

#include "ppsim/spin.hpp"

namespace {

using namespace ppsim;

std::vector<SelectivePulse> chain(int n) {
  std::vector<SelectivePulse> pulses;
  const int dim = 1 << n;
  for (int l = 1; l < dim; ++l) {
    pulses.push_back({LevelIndex(l), LevelIndex(l + 1), Axis::kX, 0.3 * l});
  }
  return pulses;
}

void BM_ExpmUnitary(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Operator h = generator(chain(n), n);
  for (auto _ : state) benchmark::DoNotOptimize(expm_unitary(h));
}
BENCHMARK(BM_ExpmUnitary)->DenseRange(1, 5);

void BM_EvolveAndCrush(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  SpinSystem sys = SpinSystem::from_gammas(std::vector<double>(static_cast<std::size_t>(n), 1.0));
  const auto rho = thermal_deviation(sys);
  const Operator u = expm_unitary(generator(chain(n), n));
  for (auto _ : state) benchmark::DoNotOptimize(crush(evolve(rho, u), CrushMode::kCoherenceOrder));
}
BENCHMARK(BM_EvolveAndCrush)->DenseRange(1, 5);

}  // namespace
