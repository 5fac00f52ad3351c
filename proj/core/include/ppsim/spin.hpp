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

// Operator algebra for n spin-1/2 nuclei in the computational basis.
//
// Basis convention: energy level l (1-based) corresponds to the bitstring
// whose binary value is l - 1, with spin 1 as the most significant bit. Bit 0
// is the spin-up (+1/2) state. Spin operators are normalized as I = sigma / 2.

#include <complex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace ppsim {

using Complex = std::complex<double>;
using Operator = Eigen::MatrixXcd;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kPseudoPureTol = 1e-6;

enum class Axis { kX, kY, kZ };
enum class Sign { kPlus, kMinus };

char axis_name(Axis axis);
Axis parse_axis(std::string_view token);

/// 1-based energy level index.
class LevelIndex {
 public:
  constexpr LevelIndex() = default;
  constexpr explicit LevelIndex(int value) : value_(value) {}

  constexpr int value() const { return value_; }
  /// 0-based matrix row.
  constexpr int row() const { return value_ - 1; }

  friend constexpr bool operator==(LevelIndex, LevelIndex) = default;
  friend constexpr auto operator<=>(LevelIndex, LevelIndex) = default;

 private:
  int value_ = 1;
};

LevelIndex level_of(std::string_view bits);
/// Checks that bits has exactly n_spins characters.
LevelIndex level_of(std::string_view bits, int n_spins);
std::string bits_of(LevelIndex level, int n_spins);

/// Spin state (0 or 1) of 1-based spin i at a level.
int spin_state(LevelIndex level, int spin, int n_spins);

struct SpinSystem {
  std::vector<std::string> labels;
  std::vector<double> gamma;
  /// Carrier frequencies, readout only. Empty when unknown.
  std::vector<double> larmor_mhz;
  /// Per-spin resonance offsets from the carrier in Hz. Empty means zero.
  std::vector<double> offset_hz;
  /// Symmetric coupling table in Hz. Empty when unknown.
  std::vector<std::vector<double>> j_hz;

  int n_spins() const { return static_cast<int>(gamma.size()); }
  int dim() const { return 1 << n_spins(); }
  bool has_couplings() const { return !j_hz.empty(); }
  double offset(int spin) const;
  double coupling(int a, int b) const;

  /// Throws InputError on a violated invariant.
  void validate() const;

  static SpinSystem from_gammas(std::vector<double> gamma);
};

/// Hermitian 2^n x 2^n matrix in units of the omitted common factor.
class DeviationMatrix {
 public:
  DeviationMatrix() = default;
  /// Throws InputError unless the matrix is square, of power-of-two size and
  /// Hermitian within tol.
  explicit DeviationMatrix(Operator m, double tol = kHermitianTol);

  static DeviationMatrix diagonal(std::span<const double> entries);

  const Operator& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }
  int n_spins() const;
  Complex operator()(LevelIndex r, LevelIndex c) const { return m_(r.row(), c.row()); }
  Eigen::VectorXd populations() const { return m_.diagonal().real(); }
  Complex trace() const { return m_.trace(); }
  bool is_diagonal(double tol = kHermitianTol) const;

 private:
  Operator m_;
};

bool is_hermitian(const Operator& m, double tol = kHermitianTol);

Operator identity(int n_spins);
/// I_axis of spin i (1-based) embedded in n spins.
Operator spin_op(int spin, Axis axis, int n_spins);
/// E_+ projects spin i onto |0>, E_- onto |1>.
Operator projector(int spin, Sign sign, int n_spins);
/// sigma_axis / 2 restricted to the two-level subspace {m, k}.
Operator transition_op(LevelIndex m, LevelIndex k, Axis axis, int n_spins);

/// Sum_i gamma_i sigma_z^(i); diagonal.
DeviationMatrix thermal_deviation(const SpinSystem& system);

struct SelectivePulse {
  LevelIndex from;
  LevelIndex to;
  Axis axis = Axis::kX;
  double angle_rad = 0.0;
};

/// Hermitian exponent sum_k angle_k * I_axis^(from,to) of a block of
/// simultaneous selective pulses.
Operator generator(std::span<const SelectivePulse> pulses, int n_spins);

/// exp(-iH) via the eigendecomposition of a Hermitian H.
Operator expm_unitary(const Operator& h);

DeviationMatrix evolve(const DeviationMatrix& rho, const Operator& u);

enum class CrushMode { kAllOffDiagonal, kCoherenceOrder };

int coherence_order(LevelIndex j, LevelIndex k, int n_spins);
DeviationMatrix crush(const DeviationMatrix& rho,
                      CrushMode mode = CrushMode::kAllOffDiagonal);

/// diag = uniform * 1 + pure * e_target.
struct PurePart {
  double uniform = 0.0;
  double pure = 0.0;
  LevelIndex target;
};

PurePart pure_part(const DeviationMatrix& rho, double tol = kPseudoPureTol);

/// Spread (max - min) of the populations of every level except `skip`.
double population_spread(const Eigen::VectorXd& populations, LevelIndex skip);

/// max |a - b| / max |b|.
double max_rel_error(const DeviationMatrix& a, const DeviationMatrix& b);
/// max |a - b| / max(max |a|, max |b|).
double max_rel_error_symmetric(const DeviationMatrix& a, const DeviationMatrix& b);

}  // namespace ppsim
