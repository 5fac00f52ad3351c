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

#include "ppsim/presets.hpp"

#include "ppsim/error.hpp"

namespace ppsim {
namespace {

// Gyromagnetic ratios in relative units.
constexpr double kGammaC13 = 1.4048;
constexpr double kGammaH1 = 5.5857;

SpinSystem make(std::vector<std::string> labels, std::vector<double> gamma) {
  SpinSystem s;
  s.labels = std::move(labels);
  s.gamma = std::move(gamma);
  return s;
}

}  // namespace

const std::vector<std::pair<std::string, SpinSystem>>& presets() {
  static const std::vector<std::pair<std::string, SpinSystem>> all = [] {
    SpinSystem chloroform = make({"C", "H"}, {kGammaC13, kGammaH1});
    chloroform.larmor_mhz = {125.77, 500.13};
    chloroform.j_hz = {{0.0, 214.95}, {214.95, 0.0}};
    return std::vector<std::pair<std::string, SpinSystem>>{
        {"chloroform", chloroform},
        {"homonuclear-2", make({"A", "X"}, {1.0, 1.0})},
        {"homonuclear-3", make({"A", "B", "C"}, {1.0, 1.0, 1.0})},
        {"hetero-3", make({"C1", "C2", "H"}, {kGammaC13, kGammaC13, kGammaH1})},
    };
  }();
  return all;
}

const SpinSystem& preset(std::string_view name) {
  for (const auto& [key, system] : presets()) {
    if (key == name) return system;
  }
  throw InputError("unknown preset", std::string(name));
}

}  // namespace ppsim
