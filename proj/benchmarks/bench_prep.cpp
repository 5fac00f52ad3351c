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

#include "ppsim/prep.hpp"
#include "ppsim/presets.hpp"

namespace {

using namespace ppsim;

void BM_Residual(benchmark::State& state, const char* system, std::vector<double> angles) {
  const auto& sys = preset(system);
  const auto spec = default_cascade(sys.n_spins(), LevelIndex(1));
  for (auto _ : state) benchmark::DoNotOptimize(residual(angles, sys, spec));
}
BENCHMARK_CAPTURE(BM_Residual, chloroform, "chloroform", std::vector<double>{127.13, 186.01});
BENCHMARK_CAPTURE(BM_Residual, hetero3, "hetero-3",
                  std::vector<double>{201.89, 258.83, 313.40, 364.31, 295.37, 234.18});

void BM_Solve(benchmark::State& state, const char* system, int grid) {
  const auto& sys = preset(system);
  const auto spec = default_cascade(sys.n_spins(), LevelIndex(1));
  SolverOptions opts;
  opts.seed_published = false;
  opts.grid_per_dim = grid;
  opts.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(solve_angles(sys, spec, opts));
}
BENCHMARK_CAPTURE(BM_Solve, homonuclear2, "homonuclear-2", 5)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_Solve, chloroform, "chloroform", 5)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_Solve, homonuclear3_coarse, "homonuclear-3", 2)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace
