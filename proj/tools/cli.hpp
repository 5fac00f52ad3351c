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

// Command-line front end. Kept in a library so tests can drive it in-process.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ppsim::cli {

/// Options shared by the subcommands. Unused fields keep their defaults.
struct RunConfig {
  std::string system = "chloroform";  // file path or preset name
  std::string target = "00";
  std::string program;
  std::string state;
  std::string initial = "thermal";
  std::string formula;
  std::vector<double> angles_deg;
  int spin = 1;
  std::string pulse = "x90";
  std::string format;
  int grid = 0;
  double tol = 1e-10;
  double max_angle_deg = 360.0;
  bool no_seeds = false;
  double pure_tol = 1e-6;
  double noise = 0.0;
  std::optional<std::uint64_t> seed;
  std::string output;
};

/// Runs one command. args excludes the program name. Returns the exit code:
/// 0 success, 1 input error, 2 no solution, 3 precondition failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ppsim::cli
