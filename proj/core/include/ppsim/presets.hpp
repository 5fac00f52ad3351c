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

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ppsim/spin.hpp"

namespace ppsim {

/// Built-in systems: chloroform (13C-1H), homonuclear-2, homonuclear-3,
/// hetero-3 (13C-13C-1H).
const std::vector<std::pair<std::string, SpinSystem>>& presets();

/// Throws InputError for an unknown name.
const SpinSystem& preset(std::string_view name);

}  // namespace ppsim
