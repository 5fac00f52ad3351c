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

#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ppsim/dsl.hpp"
#include "ppsim/error.hpp"
#include "ppsim/hogg.hpp"
#include "ppsim/io.hpp"
#include "ppsim/prep.hpp"
#include "ppsim/presets.hpp"
#include "ppsim/readout.hpp"
#include "ppsim/spin.hpp"

namespace ppsim::cli {
namespace {

using io::canonical;
using nlohmann::json;

std::string error_code_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInput: return "input_error";
    case ErrorKind::kNoSolution: return "no_solution";
    case ErrorKind::kPrecondition: return "precondition_failed";
  }
  return "error";
}

int report(std::ostream& err, ErrorKind kind, const std::string& message, const std::string& context) {
  json j{{"code", error_code_name(kind)}, {"message", message}, {"context", context}};
  err << j.dump() << '\n';
  return static_cast<int>(kind);
}

std::string format_number(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, canonical(value));
  return std::string(buf, res.ptr);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json numbers(const Eigen::VectorXd& v) {
  json out = json::array();
  for (double x : v) out.push_back(canonical(x));
  return out;
}

json numbers(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(canonical(x));
  return out;
}

json cascade_json(const CascadeSpec& spec) {
  json out = json::array();
  for (const auto& s : spec.steps) {
    out.push_back({{"from", bits_of(s.from, spec.n_spins)},
                   {"to", bits_of(s.to, spec.n_spins)},
                   {"spin", s.spin}});
  }
  return out;
}

/// Diagonal summary shared by prepare and run.
json state_json(const DeviationMatrix& rho, double pure_tol, std::optional<LevelIndex> target) {
  json j;
  j["matrix"] = io::matrix_to_json(rho.matrix());
  j["diagonal"] = numbers(rho.populations());
  j["trace"] = canonical(rho.trace().real());
  try {
    const PurePart pp = pure_part(rho, pure_tol);
    j["pure_part"] = {{"uniform", canonical(pp.uniform)},
                      {"pure", canonical(pp.pure)},
                      {"target", bits_of(pp.target, rho.n_spins())}};
    if (!target) target = pp.target;
  } catch (const PreconditionError&) {
    j["pure_part"] = nullptr;
  }
  if (target && rho.is_diagonal(pure_tol)) {
    j["population_spread"] = canonical(population_spread(rho.populations(), *target));
  }
  return j;
}

SpinSystem load_system(const RunConfig& cfg) { return io::load_system(cfg.system); }

DeviationMatrix load_state(const std::string& arg, const SpinSystem& system) {
  if (arg == "thermal") return thermal_deviation(system);
  DeviationMatrix rho = io::load_state(arg);
  if (rho.dim() != system.dim()) {
    throw InputError("state dimension does not match the spin system", arg);
  }
  return rho;
}

SolverOptions solver_options(const RunConfig& cfg) {
  SolverOptions opts;
  opts.grid_per_dim = cfg.grid;
  opts.newton_tol = cfg.tol;
  opts.max_angle_deg = cfg.max_angle_deg;
  opts.seed_published = !cfg.no_seeds;
  return opts;
}

std::string cmd_presets() {
  json j = json::object();
  for (const auto& [name, system] : presets()) j[name] = io::system_to_json(system);
  return dump(j);
}

std::string cmd_solve(const RunConfig& cfg) {
  const SpinSystem system = load_system(cfg);
  const LevelIndex target = level_of(cfg.target, system.n_spins());
  const CascadeSpec spec = default_cascade(system.n_spins(), target);
  const SolverResult result = solve_angles(system, spec, solver_options(cfg));

  json roots = json::array();
  for (const auto& r : result.roots) {
    roots.push_back({{"angles_deg", numbers(r.angles_deg)},
                     {"residual_norm", canonical(r.residual_norm)},
                     {"seeded", r.seeded}});
  }
  const auto converged = std::count(result.converged.begin(), result.converged.end(), true);
  json j{{"target", cfg.target},
         {"cascade", cascade_json(spec)},
         {"roots", roots},
         {"starts_tried", result.starts_tried},
         {"starts_converged", converged},
         {"best_residual", canonical(result.best_residual)}};
  return dump(j);
}

std::string cmd_prepare(const RunConfig& cfg) {
  const SpinSystem system = load_system(cfg);
  const LevelIndex target = level_of(cfg.target, system.n_spins());
  std::optional<std::vector<double>> angles;
  if (!cfg.angles_deg.empty()) angles = cfg.angles_deg;
  const Preparation prep = prepare_pseudo_pure(system, target, angles, solver_options(cfg));

  json j = state_json(prep.rho, cfg.pure_tol, target);
  j["target"] = cfg.target;
  j["cascade"] = cascade_json(prep.cascade);
  j["angles_deg"] = numbers(prep.angles_deg);
  if (prep.solve) j["roots_found"] = prep.solve->roots.size();
  return dump(j);
}

DeviationMatrix initial_state(const RunConfig& cfg, const SpinSystem& system) {
  if (cfg.initial == "thermal") return thermal_deviation(system);
  const LevelIndex level = level_of(cfg.initial, system.n_spins());
  std::vector<double> diag(static_cast<std::size_t>(system.dim()), -1.0 / system.dim());
  diag[static_cast<std::size_t>(level.row())] += 1.0;
  return DeviationMatrix::diagonal(diag);
}

std::string cmd_run(const RunConfig& cfg) {
  const SpinSystem system = load_system(cfg);
  const dsl::Program program = dsl::parse(io::read_file(cfg.program));
  const dsl::ChannelSequence seq = dsl::compile(program, system);
  const DeviationMatrix rho = dsl::run(seq, initial_state(cfg, system));
  json j = state_json(rho, cfg.pure_tol, std::nullopt);
  j["statements"] = program.statements.size();
  return dump(j);
}

std::string transition_name(const SpectralLine& line, int n) {
  return bits_of(line.from, n) + "-" + bits_of(line.to, n);
}

std::string cmd_spectrum(const RunConfig& cfg) {
  const SpinSystem system = load_system(cfg);
  const DeviationMatrix rho = load_state(cfg.state, system);
  const bool freqs = system.n_spins() == 1 || system.has_couplings();
  const StickSpectrum spec = readout_spectrum(rho, cfg.spin, system, parse_read_pulse(cfg.pulse), freqs);
  const int n = system.n_spins();

  if (cfg.format == "json") {
    json lines = json::array();
    for (const auto& l : spec.lines) {
      lines.push_back({{"freq_hz", l.freq_hz ? json(canonical(*l.freq_hz)) : json(nullptr)},
                       {"re", canonical(l.amplitude.real())},
                       {"im", canonical(l.amplitude.imag())},
                       {"transition", transition_name(l, n)}});
    }
    return dump(json{{"spin", spec.spin}, {"pulse", cfg.pulse}, {"lines", lines}});
  }
  if (!cfg.format.empty() && cfg.format != "csv") throw InputError("unknown format", cfg.format);

  std::string out = "freq_hz,re,im,transition\n";
  for (const auto& l : spec.lines) {
    out += (l.freq_hz ? format_number(*l.freq_hz) : std::string()) + "," +
           format_number(l.amplitude.real()) + "," + format_number(l.amplitude.imag()) + "," +
           transition_name(l, n) + "\n";
  }
  return out;
}

std::string cmd_tomo(const RunConfig& cfg, std::uint64_t seed) {
  const SpinSystem system = load_system(cfg);
  const DeviationMatrix rho = load_state(cfg.state, system);
  const auto settings = tomography_settings(system.n_spins());
  const MeasurementSet m = simulate_measurements(rho, system, settings, cfg.noise, seed);
  // Readout cannot see the trace, so it is taken from the input state.
  const TomographyResult result = reconstruct(m, system, rho.trace().real());

  json j{{"reconstructed", io::matrix_to_json(result.reconstructed.matrix())},
         {"residual_norm", canonical(result.residual_norm)},
         {"settings_used", result.settings_used},
         {"noise_sigma", canonical(m.noise_sigma)},
         {"noise_std", canonical(m.noise_std)},
         {"seed", seed}};
  if (rho.matrix().cwiseAbs().maxCoeff() > 0.0) {
    j["max_rel_error"] = canonical(max_rel_error(result.reconstructed, rho));
  } else {
    j["max_rel_error"] = nullptr;
  }
  return dump(j);
}

std::string cmd_hogg(const RunConfig& cfg) {
  const SpinSystem system = load_system(cfg);
  const auto formula = hogg::OneSatFormula::parse(cfg.formula);
  const DeviationMatrix rho = cfg.state.empty()
                                  ? prepare_pseudo_pure(system, level_of("00", system.n_spins()),
                                                        std::nullopt, solver_options(cfg))
                                        .rho
                                  : load_state(cfg.state, system);
  const hogg::HoggResult result = hogg::run(rho, formula, cfg.pure_tol);

  json probs = json::object();
  std::size_t best = 0;
  for (std::size_t s = 0; s < result.probabilities.size(); ++s) {
    probs[bits_of(LevelIndex(static_cast<int>(s) + 1), rho.n_spins())] = canonical(result.probabilities[s]);
    if (result.probabilities[s] > result.probabilities[best]) best = s;
  }
  json j{{"formula", formula.to_string()},
         {"probabilities", probs},
         {"solution", bits_of(LevelIndex(static_cast<int>(best) + 1), rho.n_spins())},
         {"rho_final", io::matrix_to_json(result.rho_final.matrix())}};
  return dump(j);
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v == 0.0 ? 0.0 : v);
  return buf;
}

// Sticks are phased against the thermal lines of the same spin, so a line in
// phase with equilibrium points up.
std::string cmd_plot(const RunConfig& cfg, bool all_spins) {
  const SpinSystem system = load_system(cfg);
  const DeviationMatrix rho = load_state(cfg.state, system);
  const DeviationMatrix eq = thermal_deviation(system);
  const ReadPulse pulse = parse_read_pulse(cfg.pulse);
  const ReadPulse ref_pulse = pulse == ReadPulse::kNone ? ReadPulse::kX90 : pulse;

  std::vector<int> spins;
  if (all_spins) {
    for (int i = 1; i <= system.n_spins(); ++i) spins.push_back(i);
  } else {
    spins.push_back(cfg.spin);
  }

  struct Panel {
    int spin;
    std::vector<std::pair<double, double>> sticks;  // (freq, signed height)
  };
  std::vector<Panel> panels;
  double scale = 0.0;
  for (int spin : spins) {
    const StickSpectrum s = readout_spectrum(rho, spin, system, pulse);
    const StickSpectrum ref = readout_spectrum(eq, spin, system, ref_pulse);
    Complex phase = ref.lines.front().amplitude;
    phase = std::abs(phase) > 0.0 ? std::conj(phase) / std::abs(phase) : Complex(1.0);
    Panel p{spin, {}};
    for (const auto& line : s.lines) {
      const double h = (line.amplitude * phase).real();
      p.sticks.emplace_back(*line.freq_hz, h);
      scale = std::max(scale, std::abs(h));
    }
    panels.push_back(std::move(p));
  }
  if (scale == 0.0) scale = 1.0;

  constexpr double kWidth = 640, kPanel = 160, kMargin = 40;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(kWidth) << "\" height=\""
      << fixed(kPanel * static_cast<double>(panels.size())) << "\">\n";
  for (std::size_t i = 0; i < panels.size(); ++i) {
    const Panel& p = panels[i];
    double lo = p.sticks.front().first, hi = lo;
    for (const auto& [f, h] : p.sticks) {
      lo = std::min(lo, f);
      hi = std::max(hi, f);
    }
    const double pad = std::max(10.0, 0.25 * (hi - lo));
    lo -= pad;
    hi += pad;
    const double top = kPanel * static_cast<double>(i);
    const double base = top + kPanel / 2;
    // NMR convention: frequency increases to the left.
    auto x_of = [&](double f) { return kMargin + (hi - f) / (hi - lo) * (kWidth - 2 * kMargin); };
    const std::string label = system.labels.empty() ? std::to_string(p.spin)
                                                    : system.labels[static_cast<std::size_t>(p.spin - 1)];
    svg << "  <g id=\"spin" << p.spin << "\">\n";
    svg << "    <text x=\"" << fixed(kMargin) << "\" y=\"" << fixed(top + 20) << "\" font-size=\"14\">"
        << label << " " << cfg.pulse << "</text>\n";
    svg << "    <line x1=\"" << fixed(kMargin) << "\" y1=\"" << fixed(base) << "\" x2=\""
        << fixed(kWidth - kMargin) << "\" y2=\"" << fixed(base) << "\" stroke=\"gray\"/>\n";
    for (const auto& [f, h] : p.sticks) {
      const double x = x_of(f);
      svg << "    <line x1=\"" << fixed(x) << "\" y1=\"" << fixed(base) << "\" x2=\"" << fixed(x)
          << "\" y2=\"" << fixed(base - h / scale * (kPanel / 2 - 30)) << "\" stroke=\"black\" "
          << "stroke-width=\"2\"/>\n";
      svg << "    <text x=\"" << fixed(x) << "\" y=\"" << fixed(top + kPanel - 6)
          << "\" font-size=\"10\" text-anchor=\"middle\">" << fixed(f) << "</text>\n";
    }
    svg << "  </g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::uint64_t resolve_seed(const RunConfig& cfg) {
  if (cfg.seed) return *cfg.seed;
  const char* env = std::getenv("PPSIM_SEED");
  if (env == nullptr || *env == '\0') return 0;
  std::uint64_t value = 0;
  const std::string_view s(env);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw InputError("PPSIM_SEED must be a non-negative integer", std::string(s));
  }
  return value;
}

void add_system(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--system", cfg.system, "System JSON file or preset name")->capture_default_str();
}

void add_solver(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--grid", cfg.grid, "Starts per angle (0: automatic)")->check(CLI::NonNegativeNumber);
  sub->add_option("--tol", cfg.tol, "Newton residual tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--max-angle", cfg.max_angle_deg, "Upper bound of the angle box in degrees")
      ->check(CLI::PositiveNumber);
  sub->add_flag("--no-seeds", cfg.no_seeds, "Do not seed the solver with published angles");
}

void add_output(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("-o,--output", cfg.output, "Write to FILE instead of standard output");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"ppsim: pseudo-pure state preparation and readout simulator"};
  app.require_subcommand(1);

  auto* presets_cmd = app.add_subcommand("presets", "List built-in spin systems");
  add_output(presets_cmd, cfg);

  auto* solve = app.add_subcommand("solve", "Solve cascade pulse angles for a target level");
  add_system(solve, cfg);
  solve->add_option("--target", cfg.target, "Target bitstring")->required();
  add_solver(solve, cfg);
  add_output(solve, cfg);

  auto* prepare = app.add_subcommand("prepare", "Prepare a pseudo-pure state");
  add_system(prepare, cfg);
  prepare->add_option("--target", cfg.target, "Target bitstring")->required();
  prepare->add_option("--angles", cfg.angles_deg, "Comma-separated cascade angles in degrees")
      ->delimiter(',');
  prepare->add_option("--pure-tol", cfg.pure_tol, "Pseudo-pure tolerance")->check(CLI::PositiveNumber);
  add_solver(prepare, cfg);
  add_output(prepare, cfg);

  auto* run_cmd = app.add_subcommand("run", "Run a pulse program");
  add_system(run_cmd, cfg);
  run_cmd->add_option("--program", cfg.program, "Pulse program file")->required();
  run_cmd->add_option("--initial", cfg.initial, "thermal or a bitstring")->capture_default_str();
  run_cmd->add_option("--pure-tol", cfg.pure_tol, "Pseudo-pure tolerance")->check(CLI::PositiveNumber);
  add_output(run_cmd, cfg);

  auto* spectrum = app.add_subcommand("spectrum", "Stick spectrum of one spin after a readout pulse");
  add_system(spectrum, cfg);
  spectrum->add_option("--state", cfg.state, "State JSON file or 'thermal'")->required();
  spectrum->add_option("--spin", cfg.spin, "Observed spin (1-based)");
  spectrum->add_option("--pulse", cfg.pulse, "none, x90 or y90")->capture_default_str();
  spectrum->add_option("--format", cfg.format, "csv or json");
  add_output(spectrum, cfg);

  auto* tomo = app.add_subcommand("tomo", "Simulated state tomography");
  add_system(tomo, cfg);
  tomo->add_option("--state", cfg.state, "State JSON file or 'thermal'")->required();
  tomo->add_option("--noise", cfg.noise, "Amplitude noise relative to the largest thermal line")
      ->check(CLI::NonNegativeNumber);
  tomo->add_option("--seed", cfg.seed, "Noise seed (default: $PPSIM_SEED or 0)");
  add_output(tomo, cfg);

  auto* hogg_cmd = app.add_subcommand("hogg", "Two-variable 1-SAT search");
  add_system(hogg_cmd, cfg);
  hogg_cmd->add_option("--formula", cfg.formula, "Literals V<k> or !V<k> joined by '&'")->required();
  hogg_cmd->add_option("--state", cfg.state, "Pseudo-pure |00> state (default: prepared)");
  hogg_cmd->add_option("--pure-tol", cfg.pure_tol, "Pseudo-pure tolerance")->check(CLI::PositiveNumber);
  add_output(hogg_cmd, cfg);

  auto* plot = app.add_subcommand("plot", "SVG stick plot per spin");
  add_system(plot, cfg);
  plot->add_option("--state", cfg.state, "State JSON file or 'thermal'")->required();
  auto* plot_spin = plot->add_option("--spin", cfg.spin, "Plot only this spin");
  plot->add_option("--pulse", cfg.pulse, "none, x90 or y90")->capture_default_str();
  add_output(plot, cfg);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    return report(err, ErrorKind::kInput, e.what(), "arguments");
  }

  try {
    std::string result;
    if (presets_cmd->parsed()) result = cmd_presets();
    else if (solve->parsed()) result = cmd_solve(cfg);
    else if (prepare->parsed()) result = cmd_prepare(cfg);
    else if (run_cmd->parsed()) result = cmd_run(cfg);
    else if (spectrum->parsed()) result = cmd_spectrum(cfg);
    else if (tomo->parsed()) result = cmd_tomo(cfg, resolve_seed(cfg));
    else if (hogg_cmd->parsed()) result = cmd_hogg(cfg);
    else if (plot->parsed()) result = cmd_plot(cfg, plot_spin->count() == 0);

    if (cfg.output.empty()) {
      out << result;
    } else {
      std::ofstream file(cfg.output, std::ios::binary);
      if (!file) throw InputError("cannot write output file", cfg.output);
      file << result;
    }
    return 0;
  } catch (const Error& e) {
    return report(err, e.kind(), e.what(), e.context());
  } catch (const std::exception& e) {
    return report(err, ErrorKind::kPrecondition, e.what(), "internal");
  }
}

}  // namespace ppsim::cli
