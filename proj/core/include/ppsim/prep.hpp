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

// Pseudo-pure state preparation by simultaneous line-selective pulses.
//
// A cascade is a chain of single-quantum transitions linking every level
// except the target. Pulsing all of its lines at once with suitable angles
// equalizes the non-target populations; a crusher gradient then removes the
// coherences, leaving a * 1 + b * |target><target|.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ppsim/spin.hpp"

namespace ppsim {

struct CascadeStep {
  LevelIndex from;
  LevelIndex to;
  /// 1-based spin whose state differs between the two levels.
  int spin = 0;

  friend bool operator==(const CascadeStep&, const CascadeStep&) = default;
};

struct CascadeSpec {
  int n_spins = 0;
  LevelIndex target;
  std::vector<CascadeStep> steps;
};

/// Builds a step between two levels, deriving the flipped spin. Throws
/// InputError if the levels differ in more or fewer than one spin.
CascadeStep make_step(LevelIndex from, LevelIndex to, int n_spins);

/// The published routes for two and three spins, relabeled to other targets
/// by XOR with the target bitstring. Larger systems use a reflected Gray code.
CascadeSpec default_cascade(int n_spins, LevelIndex target);

struct CascadeReport {
  bool valid = true;
  std::string violation;
  /// Offending step, when the violation is local to one.
  std::optional<std::size_t> step;
};

CascadeReport validate_cascade(const CascadeSpec& spec);

/// Unitary of the cascade pulsed simultaneously with x-phase selective pulses.
Operator cascade_unitary(std::span<const double> angles_deg, const CascadeSpec& spec);

/// Populations after the pulses (before the crusher).
Eigen::VectorXd evolved_populations(std::span<const double> angles_deg,
                                    const SpinSystem& system, const CascadeSpec& spec);

/// [p(l) - p(l0)] for every non-target level l after the reference l0, which
/// is the first non-target level. Zero iff the non-target populations agree.
Eigen::VectorXd residual(std::span<const double> angles_deg, const SpinSystem& system,
                         const CascadeSpec& spec);

struct SolverOptions {
  /// Grid points per angle; 0 picks 5 for up to two angles, 3 for up to six.
  int grid_per_dim = 0;
  double newton_tol = 1e-10;
  int max_iter = 100;
  double fd_step_rad = 1e-6;
  /// Largest Newton step per component.
  double max_step_deg = 30.0;
  /// Roots must lie in the open box (0, max_angle_deg)^k.
  double max_angle_deg = 360.0;
  /// Also start from the published angle sets whose length matches.
  bool seed_published = true;
  unsigned threads = 0;
};

struct Root {
  std::vector<double> angles_deg;
  double residual_norm = 0.0;
  /// True if first reached from a published seed rather than the grid.
  bool seeded = false;
};

struct SolverResult {
  std::vector<Root> roots;
  std::size_t starts_tried = 0;
  std::vector<bool> converged;
  double best_residual = 0.0;
};

/// Angle vectors (degrees) reported for the two- and three-spin cascades.
const std::vector<std::vector<double>>& published_angle_sets();

/// Multi-start damped Newton on residual(). Throws NoSolutionError if no start
/// converges inside the angle box.
SolverResult solve_angles(const SpinSystem& system, const CascadeSpec& spec,
                          const SolverOptions& opts = {});

struct Preparation {
  DeviationMatrix rho;
  CascadeSpec cascade;
  std::vector<double> angles_deg;
  std::optional<SolverResult> solve;
};

/// thermal -> simultaneous selective pulses -> ideal crusher. Solves for the
/// angles on the default cascade when none are given.
Preparation prepare_pseudo_pure(const SpinSystem& system, LevelIndex target,
                                std::optional<std::vector<double>> angles_deg = std::nullopt,
                                const SolverOptions& opts = {});

}  // namespace ppsim
