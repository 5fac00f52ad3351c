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

#include "ppsim/spin.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <optional>

#include "ppsim/error.hpp"

namespace ppsim {
namespace {

constexpr Complex kI{0.0, 1.0};

Eigen::Matrix2cd half_pauli(Axis axis) {
  Eigen::Matrix2cd s = Eigen::Matrix2cd::Zero();
  switch (axis) {
    case Axis::kX:
      s(0, 1) = s(1, 0) = 0.5;
      break;
    case Axis::kY:
      s(0, 1) = -0.5 * kI;
      s(1, 0) = 0.5 * kI;
      break;
    case Axis::kZ:
      s(0, 0) = 0.5;
      s(1, 1) = -0.5;
      break;
  }
  return s;
}

void check_spin(int spin, int n_spins) {
  if (n_spins < 1) throw InputError("spin count must be positive");
  if (spin < 1 || spin > n_spins) {
    throw InputError("spin index out of range",
                     "spin=" + std::to_string(spin) + " n=" + std::to_string(n_spins));
  }
}

void check_level(LevelIndex level, int n_spins) {
  if (level.value() < 1 || level.value() > (1 << n_spins)) {
    throw InputError("level index out of range",
                     "level=" + std::to_string(level.value()) +
                         " n=" + std::to_string(n_spins));
  }
}

// Embeds a single-spin operator at slot `spin` of an n-spin Kronecker product.
Operator embed(const Eigen::Matrix2cd& single, int spin, int n_spins) {
  const int dim = 1 << n_spins;
  const int shift = n_spins - spin;  // bit position of this spin
  Operator out = Operator::Zero(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      if ((r ^ c) & ~(1 << shift)) continue;  // other spins must match
      out(r, c) = single((r >> shift) & 1, (c >> shift) & 1);
    }
  }
  return out;
}

}  // namespace

char axis_name(Axis axis) {
  switch (axis) {
    case Axis::kX: return 'x';
    case Axis::kY: return 'y';
    case Axis::kZ: return 'z';
  }
  return '?';
}

Axis parse_axis(std::string_view token) {
  if (token == "x") return Axis::kX;
  if (token == "y") return Axis::kY;
  if (token == "z") return Axis::kZ;
  throw InputError("unknown axis", std::string(token));
}

LevelIndex level_of(std::string_view bits) {
  if (bits.empty() || bits.size() > 30) {
    throw InputError("bitstring length out of range", std::string(bits));
  }
  int value = 0;
  for (char ch : bits) {
    if (ch != '0' && ch != '1') throw InputError("bitstring must contain only 0/1", std::string(bits));
    value = (value << 1) | (ch - '0');
  }
  return LevelIndex(value + 1);
}

LevelIndex level_of(std::string_view bits, int n_spins) {
  if (static_cast<int>(bits.size()) != n_spins) {
    throw InputError("bitstring length does not match spin count",
                     std::string(bits) + " n=" + std::to_string(n_spins));
  }
  return level_of(bits);
}

std::string bits_of(LevelIndex level, int n_spins) {
  check_level(level, n_spins);
  std::string out(static_cast<size_t>(n_spins), '0');
  const int value = level.row();
  for (int i = 0; i < n_spins; ++i) {
    if ((value >> (n_spins - 1 - i)) & 1) out[static_cast<size_t>(i)] = '1';
  }
  return out;
}

int spin_state(LevelIndex level, int spin, int n_spins) {
  return (level.row() >> (n_spins - spin)) & 1;
}

double SpinSystem::offset(int spin) const {
  return offset_hz.empty() ? 0.0 : offset_hz.at(static_cast<size_t>(spin - 1));
}

double SpinSystem::coupling(int a, int b) const {
  if (j_hz.empty()) throw InputError("spin system has no J couplings");
  return j_hz.at(static_cast<size_t>(a - 1)).at(static_cast<size_t>(b - 1));
}

void SpinSystem::validate() const {
  const auto n = gamma.size();
  if (n < 1) throw InputError("spin system needs at least one spin");
  if (n > 10) throw InputError("spin system too large for dense simulation");
  for (double g : gamma) {
    if (!std::isfinite(g) || g == 0.0) throw InputError("gyromagnetic ratios must be finite and nonzero");
  }
  if (!labels.empty() && labels.size() != n) throw InputError("labels length does not match spin count");
  if (!larmor_mhz.empty() && larmor_mhz.size() != n) {
    throw InputError("larmor_mhz length does not match spin count");
  }
  if (!offset_hz.empty() && offset_hz.size() != n) {
    throw InputError("offset_hz length does not match spin count");
  }
  if (!j_hz.empty()) {
    if (j_hz.size() != n) throw InputError("j_hz must be an n x n table");
    for (size_t a = 0; a < n; ++a) {
      if (j_hz[a].size() != n) throw InputError("j_hz must be an n x n table");
      if (j_hz[a][a] != 0.0) throw InputError("j_hz diagonal must be zero");
      for (size_t b = 0; b < a; ++b) {
        if (j_hz[a][b] != j_hz[b][a]) throw InputError("j_hz must be symmetric");
      }
    }
  }
}

SpinSystem SpinSystem::from_gammas(std::vector<double> gamma) {
  SpinSystem s;
  s.gamma = std::move(gamma);
  for (int i = 1; i <= s.n_spins(); ++i) s.labels.push_back("S" + std::to_string(i));
  s.validate();
  return s;
}

DeviationMatrix::DeviationMatrix(Operator m, double tol) : m_(std::move(m)) {
  const auto n = m_.rows();
  if (n == 0 || n != m_.cols() || !std::has_single_bit(static_cast<unsigned long>(n))) {
    throw InputError("deviation matrix must be square with power-of-two size");
  }
  if (!is_hermitian(m_, tol)) throw InputError("deviation matrix is not Hermitian");
}

DeviationMatrix DeviationMatrix::diagonal(std::span<const double> entries) {
  Operator m = Operator::Zero(static_cast<Eigen::Index>(entries.size()),
                              static_cast<Eigen::Index>(entries.size()));
  for (size_t i = 0; i < entries.size(); ++i) {
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = entries[i];
  }
  return DeviationMatrix(std::move(m));
}

int DeviationMatrix::n_spins() const {
  return std::countr_zero(static_cast<unsigned>(m_.rows()));
}

bool DeviationMatrix::is_diagonal(double tol) const {
  for (Eigen::Index r = 0; r < m_.rows(); ++r) {
    for (Eigen::Index c = 0; c < m_.cols(); ++c) {
      if (r != c && std::abs(m_(r, c)) > tol) return false;
    }
  }
  return true;
}

bool is_hermitian(const Operator& m, double tol) {
  if (m.rows() != m.cols()) return false;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = r; c < m.cols(); ++c) {
      if (std::abs(m(r, c) - std::conj(m(c, r))) > tol) return false;
    }
  }
  return true;
}

Operator identity(int n_spins) {
  const int dim = 1 << n_spins;
  return Operator::Identity(dim, dim);
}

Operator spin_op(int spin, Axis axis, int n_spins) {
  check_spin(spin, n_spins);
  return embed(half_pauli(axis), spin, n_spins);
}

Operator projector(int spin, Sign sign, int n_spins) {
  check_spin(spin, n_spins);
  Eigen::Matrix2cd p = Eigen::Matrix2cd::Zero();
  if (sign == Sign::kPlus) {
    p(0, 0) = 1.0;
  } else {
    p(1, 1) = 1.0;
  }
  return embed(p, spin, n_spins);
}

Operator transition_op(LevelIndex m, LevelIndex k, Axis axis, int n_spins) {
  check_level(m, n_spins);
  check_level(k, n_spins);
  if (m == k) throw InputError("degenerate transition", std::to_string(m.value()));
  const Eigen::Matrix2cd s = half_pauli(axis);
  const int dim = 1 << n_spins;
  Operator out = Operator::Zero(dim, dim);
  const int idx[2] = {m.row(), k.row()};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) out(idx[a], idx[b]) = s(a, b);
  }
  return out;
}

DeviationMatrix thermal_deviation(const SpinSystem& system) {
  system.validate();
  const int n = system.n_spins();
  Operator rho = Operator::Zero(system.dim(), system.dim());
  for (int i = 1; i <= n; ++i) {
    rho += (2.0 * system.gamma[static_cast<size_t>(i - 1)]) * spin_op(i, Axis::kZ, n);
  }
  return DeviationMatrix(std::move(rho));
}

Operator generator(std::span<const SelectivePulse> pulses, int n_spins) {
  Operator h = Operator::Zero(1 << n_spins, 1 << n_spins);
  for (const auto& p : pulses) {
    h += p.angle_rad * transition_op(p.from, p.to, p.axis, n_spins);
  }
  return h;
}

Operator expm_unitary(const Operator& h) {
  if (!is_hermitian(h, 1e-10)) throw PreconditionError("expm_unitary requires a Hermitian generator");
  const Operator hs = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Operator> eig(hs);
  if (eig.info() != Eigen::Success) throw PreconditionError("eigendecomposition failed");
  const Eigen::VectorXd& w = eig.eigenvalues();
  Eigen::VectorXcd phases(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) phases(i) = std::polar(1.0, -w(i));
  const Operator& v = eig.eigenvectors();
  return v * phases.asDiagonal() * v.adjoint();
}

DeviationMatrix evolve(const DeviationMatrix& rho, const Operator& u) {
  if (u.rows() != rho.dim() || u.cols() != rho.dim()) {
    throw InputError("dimension mismatch between state and unitary");
  }
  Operator out = u * rho.matrix() * u.adjoint();
  // Remove rounding asymmetry so the result is exactly Hermitian.
  out = 0.5 * (out + out.adjoint()).eval();
  return DeviationMatrix(std::move(out));
}

int coherence_order(LevelIndex j, LevelIndex k, int) {
  return std::popcount(static_cast<unsigned>(k.row())) -
         std::popcount(static_cast<unsigned>(j.row()));
}

DeviationMatrix crush(const DeviationMatrix& rho, CrushMode mode) {
  Operator out = rho.matrix();
  const int n = rho.n_spins();
  for (int r = 0; r < rho.dim(); ++r) {
    for (int c = 0; c < rho.dim(); ++c) {
      if (r == c) continue;
      if (mode == CrushMode::kAllOffDiagonal ||
          coherence_order(LevelIndex(r + 1), LevelIndex(c + 1), n) != 0) {
        out(r, c) = 0.0;
      }
    }
  }
  return DeviationMatrix(std::move(out));
}

double population_spread(const Eigen::VectorXd& populations, LevelIndex skip) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (Eigen::Index i = 0; i < populations.size(); ++i) {
    if (i == skip.row()) continue;
    lo = std::min(lo, populations(i));
    hi = std::max(hi, populations(i));
  }
  return populations.size() > 1 ? hi - lo : 0.0;
}

PurePart pure_part(const DeviationMatrix& rho, double tol) {
  if (!rho.is_diagonal(tol)) throw PreconditionError("pure_part requires a diagonal deviation matrix");
  const Eigen::VectorXd pops = rho.populations();
  const int dim = rho.dim();
  if (dim < 2) throw PreconditionError("pure_part needs at least two levels");

  double best_spread = std::numeric_limits<double>::infinity();
  std::optional<PurePart> found;
  for (int t = 0; t < dim; ++t) {
    const LevelIndex target(t + 1);
    const double spread = population_spread(pops, target);
    best_spread = std::min(best_spread, spread);
    if (spread > tol) continue;
    const double uniform = (pops.sum() - pops(t)) / (dim - 1);
    const double pure = pops(t) - uniform;
    if (std::abs(pure) <= tol) continue;
    // Two-level systems admit either level; prefer the larger population.
    if (!found || pops(t) > pops(found->target.row())) found = PurePart{uniform, pure, target};
  }
  if (!found) {
    if (pops.maxCoeff() - pops.minCoeff() <= tol) {
      throw PreconditionError("not pseudo-pure: no distinct level");
    }
    throw PreconditionError("not pseudo-pure: population spread " + std::to_string(best_spread),
                            "spread=" + std::to_string(best_spread));
  }
  return *found;
}

double max_rel_error(const DeviationMatrix& a, const DeviationMatrix& b) {
  if (a.dim() != b.dim()) throw InputError("dimension mismatch");
  const double scale = b.matrix().cwiseAbs().maxCoeff();
  if (scale == 0.0) throw PreconditionError("relative error undefined for a zero reference");
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff() / scale;
}

double max_rel_error_symmetric(const DeviationMatrix& a, const DeviationMatrix& b) {
  if (a.dim() != b.dim()) throw InputError("dimension mismatch");
  const double scale = std::max(a.matrix().cwiseAbs().maxCoeff(), b.matrix().cwiseAbs().maxCoeff());
  if (scale == 0.0) throw PreconditionError("relative error undefined for zero matrices");
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff() / scale;
}

}  // namespace ppsim
