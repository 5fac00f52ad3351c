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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "ppsim/dsl.hpp"
#include "ppsim/error.hpp"
#include "ppsim/hogg.hpp"
#include "ppsim/prep.hpp"
#include "ppsim/presets.hpp"
#include "ppsim/readout.hpp"

using namespace ppsim;
namespace o = ppsim::oracle;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
  std::vector<std::string> notes;
};

template <typename... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const std::vector<double>& published(std::size_t k, int which = 0) {
  int seen = 0;
  for (const auto& set : published_angle_sets()) {
    if (set.size() == k && seen++ == which) return set;
  }
  throw PreconditionError("no published vector");
}

SolverOptions unseeded() {
  SolverOptions opts;
  opts.seed_published = false;
  return opts;
}

const Root* find_root(const SolverResult& r, const std::vector<double>& ref, double tol) {
  for (const auto& root : r.roots) {
    bool close = true;
    for (std::size_t i = 0; i < ref.size(); ++i) close = close && std::abs(root.angles_deg[i] - ref[i]) <= tol;
    if (close) return &root;
  }
  return nullptr;
}

double thermal_range(const SpinSystem& system) {
  const auto pops = thermal_deviation(system).populations();
  return pops.maxCoeff() - pops.minCoeff();
}

/// Non-target spread after the cascade, relative to the thermal population range.
double relative_spread(const SpinSystem& system, const std::vector<double>& angles) {
  const auto spec = default_cascade(system.n_spins(), LevelIndex(1));
  return population_spread(evolved_populations(angles, system, spec), LevelIndex(1)) / thermal_range(system);
}

Verdict criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto& sys = preset("homonuclear-2");
  const auto r = solve_angles(sys, default_cascade(2, level_of("00")), unseeded());
  const double dt = seconds_since(t0);
  const Root* root = find_root(r, {77.42, 77.42}, 0.05);
  if (!root) return {false, "no root within 0.05 deg of (77.42, 77.42)"};
  const double exact = o::homonuclear_root_deg();
  return {root->residual_norm < 1e-10 && dt < 1.0,
          fmt("root (%.4f, %.4f), closed form %.4f, |r| = %.1e, %.3f s", root->angles_deg[0],
              root->angles_deg[1], exact, root->residual_norm, dt)};
}

Verdict criterion2() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto& sys = preset("chloroform");
  const auto spec = default_cascade(2, level_of("00"));
  const auto r = solve_angles(sys, spec, unseeded());
  const double dt = seconds_since(t0);
  const auto& published_angles = published(2, 1);
  const Root* root = find_root(r, published_angles, 0.5);
  const double res = residual(published_angles, sys, spec).cwiseAbs().maxCoeff();
  if (!root) return {false, "no root within 0.5 deg of (127.13, 186.01)"};
  return {res < 5e-3 && dt < 1.0,
          fmt("root (%.4f, %.4f), residual at rounded angles %.2e, %.3f s", root->angles_deg[0],
              root->angles_deg[1], res, dt)};
}

Verdict criterion3() {
  const auto prep = prepare_pseudo_pure(preset("homonuclear-2"), level_of("00"));
  const std::vector<double> expected{2.0, -2.0 / 3, -2.0 / 3, -2.0 / 3};
  double err = 0.0;
  for (std::size_t i = 0; i < 4; ++i) err = std::max(err, std::abs(prep.rho.populations()(static_cast<Eigen::Index>(i)) - expected[i]));
  return {err <= 1e-6, fmt("max |diag - (2, -2/3, -2/3, -2/3)| = %.2e", err)};
}

Verdict criterion4() {
  const auto& sys = preset("chloroform");
  const auto prep = prepare_pseudo_pure(sys, level_of("00"));
  const auto pops = prep.rho.populations();
  const std::vector<double> expected{6.9905, -2.3303, -2.3303, -2.3303};
  double err = 0.0;
  for (std::size_t i = 0; i < 4; ++i) err = std::max(err, std::abs(pops(static_cast<Eigen::Index>(i)) - expected[i]));
  const PurePart pp = pure_part(prep.rho);
  const double closed = 4.0 / 3.0 * (sys.gamma[0] + sys.gamma[1]);
  return {err <= 1e-3 && std::abs(pp.pure - 9.3208) <= 1e-3 && std::abs(pp.pure - closed) <= 1e-3,
          fmt("diag (%.4f, %.6f, %.6f, %.6f), max err %.1e; pure %.6f, (4/3)(g1+g2) = %.6f", pops(0), pops(1),
              pops(2), pops(3), err, pp.pure, closed)};
}

Verdict criterion5() {
  const auto& sys = preset("chloroform");
  bool ok = true;
  std::string detail;
  for (const char* bits : {"00", "01", "10", "11"}) {
    const auto target = level_of(bits);
    const auto prep = prepare_pseudo_pure(sys, target);
    const double spread = population_spread(prep.rho.populations(), target);
    bool found = false;
    try {
      found = pure_part(prep.rho).target == target;
    } catch (const PreconditionError&) {
    }
    ok = ok && found && spread < 1e-6;
    detail += fmt("|%s> spread %.1e%s; ", bits, spread, found ? "" : " (pure_part failed)");
  }
  return {ok, detail};
}

Verdict three_spin(const char* name, const std::vector<double>& published_angles, double max_angle) {
  const auto& sys = preset(name);
  const double spread = relative_spread(sys, published_angles);

  SolverOptions opts = unseeded();
  opts.grid_per_dim = 3;
  opts.max_angle_deg = max_angle;
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = solve_angles(sys, default_cascade(3, LevelIndex(1)), opts);
  const double dt = seconds_since(t0);
  const Root* best = &r.roots.front();
  for (const auto& root : r.roots) if (root.residual_norm < best->residual_norm) best = &root;
  const bool solver_ok = best->residual_norm < 1e-8 && dt < 60.0;

  double nearest = std::numeric_limits<double>::infinity();
  std::size_t worst_dim = 0;
  for (const auto& root : r.roots) {
    double d = 0.0;
    std::size_t dim = 0;
    for (std::size_t i = 0; i < published_angles.size(); ++i) {
      if (std::abs(root.angles_deg[i] - published_angles[i]) > d) {
        d = std::abs(root.angles_deg[i] - published_angles[i]);
        dim = i;
      }
    }
    if (d < nearest) {
      nearest = d;
      worst_dim = dim;
    }
  }

  std::string angles;
  for (double a : best->angles_deg) angles += fmt("%.2f ", a);
  return {spread <= 0.01 && solver_ok,
          fmt("published vector spread %.3f%% of thermal range (limit 1%%); solver: %zu starts in (0, %g), "
              "%zu roots, best |r| = %.1e [%s] in %.2f s",
              100 * spread, r.starts_tried, max_angle, r.roots.size(), best->residual_norm, angles.c_str(), dt),
          {fmt("nearest returned root is %.2f deg from the published vector (angle %zu)", nearest, worst_dim + 1)}};
}

Verdict criterion6() { return three_spin("homonuclear-3", published(6, 0), 360.0); }

Verdict criterion7() {
  Verdict v = three_spin("hetero-3", published(6, 1), 720.0);
  std::vector<double> corrected = published(6, 1);
  corrected[3] = 364.31;
  v.notes.push_back(fmt("with the fourth angle read as 364.31 the spread is %.4f%%",
                        100 * relative_spread(preset("hetero-3"), corrected)));
  return v;
}

Verdict criterion8() {
  const auto rho = prepare_pseudo_pure(preset("chloroform"), level_of("00")).rho;
  const std::pair<const char*, const char*> cases[] = {
      {"V1&V2", "11"}, {"V1&!V2", "10"}, {"!V1&V2", "01"}, {"!V1&!V2", "00"}};
  double worst = 0.0;
  std::string detail;
  for (const auto& [formula, solution] : cases) {
    const auto out = hogg::run(rho, hogg::OneSatFormula::parse(formula));
    const double w = out.probabilities[static_cast<std::size_t>(level_of(solution).row())];
    worst = std::max(worst, std::abs(w - 1.0));
    detail += fmt("%s -> |%s> %.12f; ", formula, solution, w);
  }
  return {worst <= 1e-10, detail};
}

Verdict criterion9() {
  const auto& sys = preset("chloroform");
  const auto settings = tomography_settings(2);
  std::mt19937_64 rng(2026);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const DeviationMatrix rho(o::random_hermitian(4, rng));
    const auto result = reconstruct(simulate_measurements(rho, sys, settings), sys, rho.trace().real());
    worst = std::max(worst, o::max_abs(result.reconstructed.matrix() - rho.matrix()));
  }

  const auto rho = prepare_pseudo_pure(sys, level_of("00")).rho;
  std::vector<double> errors;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto m = simulate_measurements(rho, sys, settings, 0.01, seed);
    errors.push_back(max_rel_error(reconstruct(m, sys).reconstructed, rho));
  }
  std::sort(errors.begin(), errors.end());
  const double median = 0.5 * (errors[99] + errors[100]);
  return {worst < 1e-10 && median >= 0.005 && median <= 0.05,
          fmt("noiseless max error %.1e; sigma 0.01 median max_rel_error %.3f%%", worst, 100 * median)};
}

Verdict criterion10() {
  const auto& sys = preset("chloroform");
  const auto prepared = prepare_pseudo_pure(sys, level_of("00")).rho;
  const auto eq = thermal_deviation(sys);
  bool ok = true;
  double oracle_err = 0.0;
  std::string detail;
  for (int spin = 1; spin <= 2; ++spin) {
    const auto pp = readout_spectrum(prepared, spin, sys, ReadPulse::kX90);
    const auto th = readout_spectrum(eq, spin, sys, ReadPulse::kX90);
    int nonzero = 0;
    for (const auto& l : pp.lines) nonzero += std::abs(l.amplitude) > 1e-10;
    const double m0 = std::abs(th.lines[0].amplitude), m1 = std::abs(th.lines[1].amplitude);
    ok = ok && nonzero == 1 && th.lines.size() == 2 && std::abs(m0 - m1) <= 1e-10 * m0 && m0 > 0;
    for (const auto* spec : {&pp, &th}) {
      const auto& rho = spec == &pp ? prepared : eq;
      for (const auto& l : spec->lines) {
        const Complex expected = o::ninety_line(rho(l.from, l.from).real(), rho(l.to, l.to).real(), 'x');
        oracle_err = std::max(oracle_err, std::abs(l.amplitude - expected));
      }
    }
    detail += fmt("spin %d: %d prepared line(s), thermal |a| %.4f/%.4f; ", spin, nonzero, m0, m1);
  }
  return {ok && oracle_err <= 1e-10, detail + fmt("oracle error %.1e", oracle_err)};
}

Verdict criterion11() {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> angle(-720.0, 720.0);
  int failures = 0;
  int checks = 0;
  auto expect = [&](bool cond) {
    ++checks;
    failures += !cond;
  };

  for (int n = 1; n <= 3; ++n) {
    const int dim = 1 << n;
    std::uniform_int_distribution<int> level(1, dim);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<SelectivePulse> pulses;
      for (int p = 0; p < 3; ++p) {
        const int a = level(rng);
        int b = level(rng);
        if (a == b) b = a % dim + 1;
        pulses.push_back({LevelIndex(a), LevelIndex(b), p % 2 ? Axis::kY : Axis::kX,
                          angle(rng) * std::numbers::pi / 180});
      }
      const Operator h = generator(pulses, n);
      const Operator u = expm_unitary(h);
      expect(is_hermitian(h));
      expect(o::max_abs(u * u.adjoint() - Operator::Identity(dim, dim)) < 1e-12);
      const DeviationMatrix rho(o::random_hermitian(dim, rng));
      const auto out = evolve(rho, u);
      expect(is_hermitian(out.matrix()));
      expect(std::abs(out.trace() - rho.trace()) < 1e-12);
      for (auto mode : {CrushMode::kAllOffDiagonal, CrushMode::kCoherenceOrder}) {
        expect(crush(crush(out, mode), mode).matrix() == crush(out, mode).matrix());
      }
    }
  }

  for (int n = 1; n <= 5; ++n) {
    for (int t = 1; t <= (1 << n); ++t) {
      auto spec = default_cascade(n, LevelIndex(t));
      expect(validate_cascade(spec).valid);
      if (!spec.steps.empty()) {
        spec.steps.pop_back();
        expect(!validate_cascade(spec).valid);
      }
    }
  }

  std::uniform_int_distribution<int> pick(0, 3);
  for (int trial = 0; trial < 50; ++trial) {
    std::string text;
    for (int s = 0; s < 6; ++s) {
      switch (pick(rng)) {
        case 0: text += fmt("block { sel 1 2 x %.6g ; sel 3 4 y %.6g }\n", angle(rng), angle(rng)); break;
        case 1: text += fmt("hard %s z %.17g\n", trial % 2 ? "all" : "2", angle(rng)); break;
        case 2: text += pick(rng) % 2 ? "crush order\n" : "crush\n"; break;
        default: text += fmt("sel 2 4 x %.3f  # note\n", angle(rng)); break;
      }
    }
    const auto program = dsl::parse(text);
    expect(dsl::parse(dsl::print(program)) == program);
  }

  return {failures == 0, fmt("%d/%d property checks hold", checks - failures, checks)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"homonuclear 2-spin root", criterion1},
      {"heteronuclear 2-spin root", criterion2},
      {"homonuclear |00> populations", criterion3},
      {"chloroform |00> populations", criterion4},
      {"all four 2-qubit targets", criterion5},
      {"homonuclear 3-spin cascade", criterion6},
      {"heteronuclear 3-spin cascade", criterion7},
      {"1-SAT search", criterion8},
      {"tomography", criterion9},
      {"readout spectra", criterion10},
      {"invariant suites", criterion11},
  };

  const auto start = std::chrono::steady_clock::now();
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += !v.pass;
    std::printf("%s %2zu  %-30s %s (%.2f s)\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                v.detail.c_str(), seconds_since(t0));
    for (const auto& note : v.notes) std::printf("          note: %s\n", note.c_str());
  }
  std::printf("%zu criteria, %d failed, %.2f s total\n", criteria.size(), failed, seconds_since(start));
  return failed == 0 ? 0 : 1;
}
