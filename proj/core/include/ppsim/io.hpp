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

#pragma once

// JSON forms of spin systems and matrices.
//
// System: {"labels":[...], "gamma":[...], "larmor_mhz":[...], "j_hz":[[...]],
//          "offset_hz":[...]}; only "gamma" is required.
// Matrix: nested rows of [re, im] pairs, or an object holding one under "matrix".

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "ppsim/spin.hpp"

namespace ppsim::io {

using nlohmann::json;

/// Rounds to 10 significant digits and folds -0 into 0, so dumps are stable.
double canonical(double value);

json system_to_json(const SpinSystem& system);
SpinSystem system_from_json(const json& j);

json matrix_to_json(const Operator& m);
DeviationMatrix matrix_from_json(const json& j);

std::string read_file(const std::filesystem::path& path);
json read_json(const std::filesystem::path& path);

/// A file path, or a preset name when no such file exists.
SpinSystem load_system(const std::string& path_or_preset);
DeviationMatrix load_state(const std::filesystem::path& path);

}  // namespace ppsim::io
