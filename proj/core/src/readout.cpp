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

#include "ppsim/readout.hpp"

#include <numbers>
#include <random>

#include "ppsim/error.hpp"

namespace ppsim {
namespace {

Operator pulse_unitary(ReadPulse p, int spin, int n_spins) {
  switch (p) {
    case ReadPulse::kNone:
      return identity(n_spins);
    case ReadPulse::kX90:
      return expm_unitary(std::numbers::pi / 2 * spin_op(spin, Axis::kX, n_spins));
    case ReadPulse::kY90:
      return expm_unitary(std::numbers::pi / 2 * spin_op(spin, Axis::kY, n_spins));
  }
  return identity(n_spins);
}

// Measurement vector of rho as stacked (re, im) pairs.
Eigen::VectorXd measure_real(const Operator& rho, const std::vector<Operator>& unitaries,
                             int n_spins) {
  const int lines_per_setting = n_spins * (1 << (n_spins - 1));
  Eigen::VectorXd out(2 * lines_per_setting * static_cast<Eigen::Index>(unitaries.size()));
  Eigen::Index idx = 0;
  for (const auto& u : unitaries) {
    const Operator r = u * rho * u.adjoint();
    for (int spin = 1; spin <= n_spins; ++spin) {
      const int bit = 1 << (n_spins - spin);
      for (int m = 0; m < (1 << n_spins); ++m) {
        if (m & bit) continue;
        const Complex a = 2.0 * r(m | bit, m);
        out(idx++) = a.real();
        out(idx++) = a.imag();
      }
    }
  }
  return out;
}

// Traceless Hermitian basis: tensor products of {1, sx, sy, sz} excluding 1...1.
std::vector<Operator> product_operator_basis(int n_spins) {
  Eigen::Matrix2cd paulis[4];
  paulis[0] = Eigen::Matrix2cd::Identity();
  paulis[1] << 0, 1, 1, 0;
  paulis[2] << 0, Complex(0, -1), Complex(0, 1), 0;
  paulis[3] << 1, 0, 0, -1;
  std::vector<Operator> basis;
  const int count = 1 << (2 * n_spins);
  for (int code = 1; code < count; ++code) {
    Operator m = Operator::Identity(1, 1);
    for (int s = 0; s < n_spins; ++s) {
      const int which = (code >> (2 * (n_spins - 1 - s))) & 3;
      Operator next(m.rows() * 2, m.cols() * 2);
      for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
          next.block(2 * r, 2 * c, 2, 2) = m(r, c) * paulis[which];
        }
      }
      m = std::move(next);
    }
    basis.push_back(std::move(m));
  }
  return basis;
}

}  // namespace

std::string_view read_pulse_name(ReadPulse p) {
  switch (p) {
    case ReadPulse::kNone: return "none";
    case ReadPulse::kX90: return "x90";
    case ReadPulse::kY90: return "y90";
  }
  return "?";
}

ReadPulse parse_read_pulse(std::string_view name) {
  if (name == "none") return ReadPulse::kNone;
  if (name == "x90") return ReadPulse::kX90;
  if (name == "y90") return ReadPulse::kY90;
  throw InputError("unknown readout pulse", std::string(name));
}

Operator readout_unitary(const ReadoutSetting& setting) {
  const int n = static_cast<int>(setting.size());
  Operator u = identity(n);
  for (int spin = 1; spin <= n; ++spin) {
    u = pulse_unitary(setting[static_cast<std::size_t>(spin - 1)], spin, n) * u;
  }
  return u;
}

std::vector<SpectralLine> line_amplitudes(const DeviationMatrix& rho, int spin) {
  const int n = rho.n_spins();
  if (spin < 1 || spin > n) throw InputError("observed spin out of range");
  const int bit = 1 << (n - spin);
  std::vector<SpectralLine> lines;
  for (int m = 0; m < rho.dim(); ++m) {
    if (m & bit) continue;
    const LevelIndex from(m + 1);
    const LevelIndex to((m | bit) + 1);
    lines.push_back({std::nullopt, 2.0 * rho(to, from), from, to});
  }
  return lines;
}

StickSpectrum readout_spectrum(const DeviationMatrix& rho, int spin, const SpinSystem& system,
                               ReadPulse pulse, bool with_frequencies) {
  const int n = rho.n_spins();
  if (system.n_spins() != n) throw InputError("state and system spin counts differ");
  if (spin < 1 || spin > n) throw InputError("observed spin out of range");
  if (with_frequencies && n > 1 && !system.has_couplings()) {
    throw InputError("line frequencies need the system's J couplings");
  }
  const DeviationMatrix after = evolve(rho, pulse_unitary(pulse, spin, n));
  StickSpectrum spec{spin, line_amplitudes(after, spin)};
  if (with_frequencies) {
    for (auto& line : spec.lines) {
      double f = system.offset(spin);
      for (int partner = 1; partner <= n; ++partner) {
        if (partner == spin) continue;
        const double half = spin_state(line.from, partner, n) == 0 ? 0.5 : -0.5;
        f += half * system.coupling(spin, partner);
      }
      line.freq_hz = f;
    }
  }
  return spec;
}

std::vector<ReadoutSetting> tomography_settings(int n_spins) {
  if (n_spins < 1 || n_spins > 3) throw InputError("tomography supports 1 to 3 spins");
  constexpr ReadPulse kChoices[3] = {ReadPulse::kNone, ReadPulse::kX90, ReadPulse::kY90};
  int total = 1;
  for (int i = 0; i < n_spins; ++i) total *= 3;
  std::vector<ReadoutSetting> out;
  for (int code = 0; code < total; ++code) {
    ReadoutSetting s(static_cast<std::size_t>(n_spins));
    int rem = code;
    for (int i = n_spins; i-- > 0;) {
      s[static_cast<std::size_t>(i)] = kChoices[rem % 3];
      rem /= 3;
    }
    out.push_back(std::move(s));
  }
  return out;
}

double max_thermal_line_amplitude(const SpinSystem& system) {
  const DeviationMatrix eq = thermal_deviation(system);
  double best = 0.0;
  for (int spin = 1; spin <= system.n_spins(); ++spin) {
    for (const auto& line : readout_spectrum(eq, spin, system, ReadPulse::kX90, false).lines) {
      best = std::max(best, std::abs(line.amplitude));
    }
  }
  return best;
}

MeasurementSet simulate_measurements(const DeviationMatrix& rho, const SpinSystem& system,
                                     const std::vector<ReadoutSetting>& settings,
                                     double noise_sigma, std::uint64_t seed) {
  const int n = rho.n_spins();
  if (system.n_spins() != n) throw InputError("state and system spin counts differ");
  if (!(noise_sigma >= 0.0)) throw InputError("noise sigma must be non-negative");
  MeasurementSet out{n, settings, {}, noise_sigma, 0.0, seed};
  std::mt19937_64 rng(seed);
  std::optional<std::normal_distribution<double>> noise;
  if (noise_sigma > 0.0) {
    out.noise_std = noise_sigma * max_thermal_line_amplitude(system);
    noise.emplace(0.0, out.noise_std);
  }
  for (const auto& setting : settings) {
    if (static_cast<int>(setting.size()) != n) throw InputError("readout setting size mismatch");
    const DeviationMatrix after = evolve(rho, readout_unitary(setting));
    std::vector<Complex> amps;
    for (int spin = 1; spin <= n; ++spin) {
      for (const auto& line : line_amplitudes(after, spin)) {
        Complex a = line.amplitude;
        if (noise) a += Complex((*noise)(rng), (*noise)(rng));
        amps.push_back(a);
      }
    }
    out.amplitudes.push_back(std::move(amps));
  }
  return out;
}

TomographyResult reconstruct(const MeasurementSet& measurements, const SpinSystem& system,
                             double trace) {
  const int n = system.n_spins();
  if (measurements.n_spins != n) throw InputError("measurement and system spin counts differ");
  if (measurements.settings.size() != measurements.amplitudes.size()) {
    throw InputError("measurement set is inconsistent");
  }
  std::vector<Operator> unitaries;
  for (const auto& s : measurements.settings) unitaries.push_back(readout_unitary(s));

  const auto basis = product_operator_basis(n);
  const Eigen::VectorXd probe = measure_real(basis.front(), unitaries, n);
  Eigen::MatrixXd design(probe.size(), static_cast<Eigen::Index>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j) {
    design.col(static_cast<Eigen::Index>(j)) = measure_real(basis[j], unitaries, n);
  }

  Eigen::VectorXd y(probe.size());
  Eigen::Index idx = 0;
  for (const auto& amps : measurements.amplitudes) {
    for (const Complex& a : amps) {
      if (idx + 2 > y.size()) throw InputError("measurement set has too many lines");
      y(idx++) = a.real();
      y(idx++) = a.imag();
    }
  }
  if (idx != y.size()) throw InputError("measurement set has too few lines");

  const Eigen::MatrixXd normal = design.transpose() * design;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(normal);
  const Eigen::VectorXd& w = eig.eigenvalues();
  if (w.size() == 0 || w(0) <= 1e-10 * w(w.size() - 1)) {
    throw PreconditionError("tomography protocol incomplete: design matrix is rank deficient");
  }
  const Eigen::VectorXd coeffs = normal.ldlt().solve(design.transpose() * y);

  Operator rho = (trace / system.dim()) * identity(n);
  for (std::size_t j = 0; j < basis.size(); ++j) rho += coeffs(static_cast<Eigen::Index>(j)) * basis[j];
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return {DeviationMatrix(std::move(rho)), (design * coeffs - y).norm(), measurements.settings.size(),
          std::nullopt};
}

}  // namespace ppsim
