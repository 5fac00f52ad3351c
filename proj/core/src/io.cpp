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

#include "ppsim/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ppsim/error.hpp"
#include "ppsim/presets.hpp"

namespace ppsim::io {
namespace {

std::vector<double> number_list(const json& j, const char* key) {
  if (!j.contains(key)) return {};
  const json& v = j.at(key);
  if (!v.is_array()) throw InputError(std::string("system: '") + key + "' must be an array");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw InputError(std::string("system: '") + key + "' must hold numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

json number_array(const std::vector<double>& values) {
  json out = json::array();
  for (double v : values) out.push_back(canonical(v));
  return out;
}

}  // namespace

double canonical(double value) {
  if (!std::isfinite(value)) return value;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", value);
  const double rounded = std::strtod(buf, nullptr);
  return rounded == 0.0 ? 0.0 : rounded;
}

json system_to_json(const SpinSystem& system) {
  json j;
  j["labels"] = system.labels;
  j["gamma"] = number_array(system.gamma);
  if (!system.larmor_mhz.empty()) j["larmor_mhz"] = number_array(system.larmor_mhz);
  if (!system.offset_hz.empty()) j["offset_hz"] = number_array(system.offset_hz);
  if (!system.j_hz.empty()) {
    j["j_hz"] = json::array();
    for (const auto& row : system.j_hz) j["j_hz"].push_back(number_array(row));
  }
  return j;
}

SpinSystem system_from_json(const json& j) {
  if (!j.is_object()) throw InputError("system: expected a JSON object");
  SpinSystem s;
  if (!j.contains("gamma")) throw InputError("system: missing 'gamma'");
  s.gamma = number_list(j, "gamma");
  s.larmor_mhz = number_list(j, "larmor_mhz");
  s.offset_hz = number_list(j, "offset_hz");
  if (j.contains("labels")) {
    if (!j["labels"].is_array()) throw InputError("system: 'labels' must be an array");
    for (const auto& l : j["labels"]) {
      if (!l.is_string()) throw InputError("system: labels must be strings");
      s.labels.push_back(l.get<std::string>());
    }
  } else {
    for (std::size_t i = 1; i <= s.gamma.size(); ++i) s.labels.push_back("S" + std::to_string(i));
  }
  if (j.contains("j_hz")) {
    if (!j["j_hz"].is_array()) throw InputError("system: 'j_hz' must be a table");
    for (const auto& row : j["j_hz"]) {
      if (!row.is_array()) throw InputError("system: 'j_hz' must be a table");
      std::vector<double> r;
      for (const auto& x : row) {
        if (!x.is_number()) throw InputError("system: 'j_hz' must hold numbers");
        r.push_back(x.get<double>());
      }
      s.j_hz.push_back(std::move(r));
    }
  }
  s.validate();
  return s;
}

json matrix_to_json(const Operator& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back(json::array({canonical(m(r, c).real()), canonical(m(r, c).imag())}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

DeviationMatrix matrix_from_json(const json& j) {
  const json& rows = j.is_object() && j.contains("matrix") ? j.at("matrix") : j;
  if (!rows.is_array() || rows.empty()) throw InputError("matrix: expected an array of rows");
  const auto n = static_cast<Eigen::Index>(rows.size());
  Operator m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const json& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      throw InputError("matrix: rows must form a square table");
    }
    for (Eigen::Index c = 0; c < n; ++c) {
      const json& e = row[static_cast<std::size_t>(c)];
      if (e.is_number()) {
        m(r, c) = e.get<double>();
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
      } else {
        throw InputError("matrix: entries must be [re, im] pairs");
      }
    }
  }
  // Files carry 10 significant digits; accept the rounding in Hermiticity.
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (!is_hermitian(m, 1e-9 * scale)) throw InputError("matrix: not Hermitian");
  return DeviationMatrix(0.5 * (m + m.adjoint()));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file", path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const std::filesystem::path& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what(), path.string());
  }
}

SpinSystem load_system(const std::string& path_or_preset) {
  std::error_code ec;
  if (!std::filesystem::exists(path_or_preset, ec)) {
    for (const auto& [name, system] : presets()) {
      if (name == path_or_preset) return system;
    }
  }
  return system_from_json(read_json(path_or_preset));
}

DeviationMatrix load_state(const std::filesystem::path& path) {
  return matrix_from_json(read_json(path));
}

}  // namespace ppsim::io
