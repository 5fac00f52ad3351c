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

// Simulated NMR readout: stick spectra after ideal hard readout pulses and
// deviation-matrix tomography by linear inversion.
//
// The line of spin i on transition (m, k), where m has spin i in |0> and k
// has it in |1>, has amplitude 2 * rho(k, m). To first order in weak
// coupling it sits at offset_i + sum_j J_ij * (+1/2 if spin j is |0> in m,
// -1/2 otherwise).

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ppsim/spin.hpp"

namespace ppsim {

enum class ReadPulse { kNone, kX90, kY90 };

std::string_view read_pulse_name(ReadPulse p);
ReadPulse parse_read_pulse(std::string_view name);

struct SpectralLine {
  std::optional<double> freq_hz;
  Complex amplitude;
  LevelIndex from;  // observed spin in |0>
  LevelIndex to;    // observed spin in |1>
};

struct StickSpectrum {
  int spin = 1;
  std::vector<SpectralLine> lines;
};

/// One readout pulse per spin, applied simultaneously.
using ReadoutSetting = std::vector<ReadPulse>;

Operator readout_unitary(const ReadoutSetting& setting);

/// Single-quantum lines of one spin, taken directly from rho (no pulse).
std::vector<SpectralLine> line_amplitudes(const DeviationMatrix& rho, int spin);

/// Applies a hard pulse on the observed spin and reads its lines. Throws
/// InputError when frequencies are requested but the system has no J table.
StickSpectrum readout_spectrum(const DeviationMatrix& rho, int spin, const SpinSystem& system,
                               ReadPulse pulse, bool with_frequencies = true);

/// {none, x90, y90}^n with spin 1 varying slowest. n <= 3.
std::vector<ReadoutSetting> tomography_settings(int n_spins);

struct MeasurementSet {
  int n_spins = 0;
  std::vector<ReadoutSetting> settings;
  /// Per setting: every line of spin 1, then spin 2, ...
  std::vector<std::vector<Complex>> amplitudes;
  double noise_sigma = 0.0;
  /// Absolute standard deviation used for the real and imaginary noise.
  double noise_std = 0.0;
  std::uint64_t seed = 0;
};

/// Largest line magnitude of the thermal state after a 90 degree pulse.
double max_thermal_line_amplitude(const SpinSystem& system);

/// noise_sigma is relative to max_thermal_line_amplitude().
MeasurementSet simulate_measurements(const DeviationMatrix& rho, const SpinSystem& system,
                                     const std::vector<ReadoutSetting>& settings,
                                     double noise_sigma = 0.0, std::uint64_t seed = 0);

struct TomographyResult {
  DeviationMatrix reconstructed;
  double residual_norm = 0.0;
  std::size_t settings_used = 0;
  std::optional<double> max_rel_error;
};

/// Least-squares fit over the traceless product-operator basis. The trace is
/// invisible to readout and is supplied by the caller. Throws
/// PreconditionError when the settings do not determine every parameter.
TomographyResult reconstruct(const MeasurementSet& measurements, const SpinSystem& system,
                             double trace = 0.0);

}  // namespace ppsim
