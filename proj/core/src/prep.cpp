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

#include "ppsim/prep.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "ppsim/error.hpp"

namespace ppsim {
namespace {

constexpr double kDeg = std::numbers::pi / 180.0;
constexpr double kDedupDeg = 0.01;

// Route for target |0...0> as bit patterns, in chain order.
std::vector<int> base_route(int n_spins) {
  if (n_spins == 3) return {0b010, 0b110, 0b100, 0b101, 0b111, 0b011, 0b001};
  // Reflected Gray code walked backwards; for two spins this is |10>,|11>,|01>.
  std::vector<int> route;
  for (int i = (1 << n_spins) - 1; i >= 1; --i) route.push_back(i ^ (i >> 1));
  return route;
}

std::vector<SelectivePulse> cascade_pulses(std::span<const double> angles_deg,
                                           const CascadeSpec& spec) {
  if (angles_deg.size() != spec.steps.size()) {
    throw InputError("angle count does not match cascade length",
                     std::to_string(angles_deg.size()) + " vs " +
                         std::to_string(spec.steps.size()));
  }
  std::vector<SelectivePulse> pulses;
  pulses.reserve(spec.steps.size());
  for (std::size_t i = 0; i < spec.steps.size(); ++i) {
    pulses.push_back({spec.steps[i].from, spec.steps[i].to, Axis::kX, angles_deg[i] * kDeg});
  }
  return pulses;
}

struct NewtonOutcome {
  Eigen::VectorXd x;  // radians
  double norm = std::numeric_limits<double>::infinity();
  bool converged = false;
};

NewtonOutcome damped_newton(Eigen::VectorXd x, const SpinSystem& system,
                            const CascadeSpec& spec, const SolverOptions& opts) {
  const auto eval = [&](const Eigen::VectorXd& rad) {
    const Eigen::VectorXd deg = rad / kDeg;
    return residual(std::span<const double>(deg.data(), static_cast<std::size_t>(deg.size())),
                    system, spec);
  };
  const Eigen::Index k = x.size();
  const double max_step = opts.max_step_deg * kDeg;

  Eigen::VectorXd r = eval(x);
  double norm = r.norm();
  Eigen::MatrixXd jac(r.size(), k);
  for (int iter = 0; iter < opts.max_iter; ++iter) {
    if (norm < opts.newton_tol) return {x, norm, true};
    for (Eigen::Index j = 0; j < k; ++j) {
      Eigen::VectorXd xp = x;
      xp(j) += opts.fd_step_rad;
      jac.col(j) = (eval(xp) - r) / opts.fd_step_rad;
    }
    Eigen::VectorXd dx = jac.completeOrthogonalDecomposition().solve(-r);
    if (!dx.allFinite()) break;
    const double biggest = dx.cwiseAbs().maxCoeff();
    if (biggest > max_step) dx *= max_step / biggest;

    bool improved = false;
    for (double t = 1.0; t > 1e-4; t *= 0.5) {
      Eigen::VectorXd trial = x + t * dx;
      Eigen::VectorXd rt = eval(trial);
      if (rt.norm() < norm) {
        x = std::move(trial);
        r = std::move(rt);
        norm = r.norm();
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  return {x, norm, norm < opts.newton_tol};
}

int default_grid(std::size_t k) {
  if (k <= 2) return 5;
  if (k <= 6) return 3;
  return 2;
}

}  // namespace

CascadeStep make_step(LevelIndex from, LevelIndex to, int n_spins) {
  const unsigned diff = static_cast<unsigned>(from.row() ^ to.row());
  if (std::popcount(diff) != 1) {
    throw InputError("transition is not single-quantum",
                     std::to_string(from.value()) + "<->" + std::to_string(to.value()));
  }
  return {from, to, n_spins - std::countr_zero(diff)};
}

CascadeSpec default_cascade(int n_spins, LevelIndex target) {
  if (n_spins < 1 || n_spins > 10) throw InputError("unsupported spin count");
  if (target.value() < 1 || target.value() > (1 << n_spins)) {
    throw InputError("target level out of range");
  }
  const int mask = target.row();
  std::vector<int> route = base_route(n_spins);
  CascadeSpec spec{n_spins, target, {}};
  for (std::size_t i = 0; i + 1 < route.size(); ++i) {
    spec.steps.push_back(make_step(LevelIndex((route[i] ^ mask) + 1),
                                   LevelIndex((route[i + 1] ^ mask) + 1), n_spins));
  }
  return spec;
}

CascadeReport validate_cascade(const CascadeSpec& spec) {
  const auto fail = [](std::string why, std::optional<std::size_t> step = std::nullopt) {
    return CascadeReport{false, std::move(why), step};
  };
  if (spec.n_spins < 1 || spec.n_spins > 10) return fail("spin count out of range");
  const int dim = 1 << spec.n_spins;
  if (spec.target.value() < 1 || spec.target.value() > dim) return fail("target out of range");

  for (std::size_t i = 0; i < spec.steps.size(); ++i) {
    const auto& s = spec.steps[i];
    if (s.from.value() < 1 || s.from.value() > dim || s.to.value() < 1 || s.to.value() > dim) {
      return fail("level out of range", i);
    }
    const unsigned diff = static_cast<unsigned>(s.from.row() ^ s.to.row());
    if (std::popcount(diff) != 1) return fail("step flips " + std::to_string(std::popcount(diff)) + " bits", i);
    if (s.spin != spec.n_spins - std::countr_zero(diff)) return fail("step spin label does not match flipped bit", i);
    if (s.from == spec.target || s.to == spec.target) return fail("step touches the target level", i);
  }

  const std::size_t expected = static_cast<std::size_t>(dim - 2);
  std::vector<int> degree(static_cast<std::size_t>(dim), 0);
  for (const auto& s : spec.steps) {
    ++degree[static_cast<std::size_t>(s.from.row())];
    ++degree[static_cast<std::size_t>(s.to.row())];
  }
  for (int l = 0; l < dim; ++l) {
    if (l != spec.target.row() && degree[static_cast<std::size_t>(l)] == 0 && dim > 2) {
      return fail("coverage: level " + std::to_string(l + 1) + " is not visited");
    }
  }
  if (spec.steps.size() != expected) {
    return fail("expected " + std::to_string(expected) + " steps, got " +
                std::to_string(spec.steps.size()));
  }
  for (int l = 0; l < dim; ++l) {
    if (degree[static_cast<std::size_t>(l)] > 2) {
      return fail("path: level " + std::to_string(l + 1) + " has more than two transitions");
    }
  }
  // n-1 edges over n nodes with max degree 2 form a path iff connected.
  if (!spec.steps.empty()) {
    std::vector<bool> seen(static_cast<std::size_t>(dim), false);
    std::vector<int> stack{spec.steps.front().from.row()};
    seen[static_cast<std::size_t>(stack.back())] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
      const int cur = stack.back();
      stack.pop_back();
      for (const auto& s : spec.steps) {
        int other = -1;
        if (s.from.row() == cur) other = s.to.row();
        if (s.to.row() == cur) other = s.from.row();
        if (other >= 0 && !seen[static_cast<std::size_t>(other)]) {
          seen[static_cast<std::size_t>(other)] = true;
          ++reached;
          stack.push_back(other);
        }
      }
    }
    if (reached != expected + 1) return fail("path: transitions do not form a connected chain");
  }
  return {};
}

Operator cascade_unitary(std::span<const double> angles_deg, const CascadeSpec& spec) {
  const auto pulses = cascade_pulses(angles_deg, spec);
  return expm_unitary(generator(pulses, spec.n_spins));
}

Eigen::VectorXd evolved_populations(std::span<const double> angles_deg,
                                    const SpinSystem& system, const CascadeSpec& spec) {
  if (system.n_spins() != spec.n_spins) throw InputError("cascade and system spin counts differ");
  const Operator u = cascade_unitary(angles_deg, spec);
  // Only the diagonal is needed: p_l = sum_j |U_lj|^2 rho_jj for a diagonal rho.
  const Eigen::VectorXd thermal = thermal_deviation(system).populations();
  return u.cwiseAbs2() * thermal;
}

Eigen::VectorXd residual(std::span<const double> angles_deg, const SpinSystem& system,
                         const CascadeSpec& spec) {
  const Eigen::VectorXd pops = evolved_populations(angles_deg, system, spec);
  std::vector<int> levels;
  for (int l = 0; l < pops.size(); ++l) {
    if (l != spec.target.row()) levels.push_back(l);
  }
  Eigen::VectorXd out(static_cast<Eigen::Index>(levels.empty() ? 0 : levels.size() - 1));
  for (std::size_t i = 1; i < levels.size(); ++i) {
    out(static_cast<Eigen::Index>(i - 1)) = pops(levels[i]) - pops(levels[0]);
  }
  return out;
}

const std::vector<std::vector<double>>& published_angle_sets() {
  static const std::vector<std::vector<double>> sets = {
      {77.40, 77.40},
      {127.13, 186.01},
      {182.02, 179.04, 229.38, 193.46, 200.28, 105.75},
      {201.89, 258.83, 313.40, 346.31, 295.37, 234.18},
  };
  return sets;
}

SolverResult solve_angles(const SpinSystem& system, const CascadeSpec& spec,
                          const SolverOptions& opts) {
  system.validate();
  if (const auto report = validate_cascade(spec); !report.valid) {
    throw InputError("invalid cascade: " + report.violation);
  }
  if (system.n_spins() != spec.n_spins) throw InputError("cascade and system spin counts differ");
  const std::size_t k = spec.steps.size();
  if (k == 0) throw InputError("cascade has no steps to solve for");

  std::vector<Eigen::VectorXd> starts;
  std::size_t n_seeded = 0;
  if (opts.seed_published) {
    for (const auto& set : published_angle_sets()) {
      if (set.size() != k) continue;
      Eigen::VectorXd x(static_cast<Eigen::Index>(k));
      for (std::size_t i = 0; i < k; ++i) x(static_cast<Eigen::Index>(i)) = set[i] * kDeg;
      starts.push_back(std::move(x));
      ++n_seeded;
    }
  }
  const int per_dim = opts.grid_per_dim > 0 ? opts.grid_per_dim : default_grid(k);
  std::size_t total = 1;
  for (std::size_t i = 0; i < k; ++i) total *= static_cast<std::size_t>(per_dim);
  for (std::size_t idx = 0; idx < total; ++idx) {
    Eigen::VectorXd x(static_cast<Eigen::Index>(k));
    std::size_t rem = idx;
    for (std::size_t d = k; d-- > 0;) {
      const auto g = static_cast<double>(rem % static_cast<std::size_t>(per_dim));
      rem /= static_cast<std::size_t>(per_dim);
      x(static_cast<Eigen::Index>(d)) = 360.0 * (g + 1.0) / (per_dim + 1.0) * kDeg;
    }
    starts.push_back(std::move(x));
  }

  std::vector<NewtonOutcome> outcomes(starts.size());
  unsigned workers = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(starts.size()));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < starts.size(); i += workers) {
          outcomes[i] = damped_newton(starts[i], system, spec, opts);
        }
      });
    }
  }

  SolverResult result;
  result.starts_tried = starts.size();
  result.best_residual = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& o = outcomes[i];
    result.best_residual = std::min(result.best_residual, o.norm);
    std::vector<double> deg(k);
    for (std::size_t d = 0; d < k; ++d) deg[d] = o.x(static_cast<Eigen::Index>(d)) / kDeg;
    const bool in_box = std::all_of(deg.begin(), deg.end(), [&](double a) {
      return a > 0.0 && a < opts.max_angle_deg;
    });
    const bool ok = o.converged && in_box;
    result.converged.push_back(ok);
    if (!ok) continue;
    const bool duplicate = std::any_of(result.roots.begin(), result.roots.end(), [&](const Root& r) {
      for (std::size_t d = 0; d < k; ++d) {
        if (std::abs(r.angles_deg[d] - deg[d]) >= kDedupDeg) return false;
      }
      return true;
    });
    if (!duplicate) result.roots.push_back({std::move(deg), o.norm, i < n_seeded});
  }
  if (result.roots.empty()) {
    throw NoSolutionError("no root found from " + std::to_string(starts.size()) + " starts",
                          result.best_residual);
  }
  return result;
}

Preparation prepare_pseudo_pure(const SpinSystem& system, LevelIndex target,
                                std::optional<std::vector<double>> angles_deg,
                                const SolverOptions& opts) {
  system.validate();
  Preparation prep{DeviationMatrix{}, default_cascade(system.n_spins(), target), {}, std::nullopt};
  if (angles_deg) {
    prep.angles_deg = std::move(*angles_deg);
  } else if (!prep.cascade.steps.empty()) {
    prep.solve = solve_angles(system, prep.cascade, opts);
    prep.angles_deg = prep.solve->roots.front().angles_deg;
  }
  const Operator u = cascade_unitary(prep.angles_deg, prep.cascade);
  prep.rho = crush(evolve(thermal_deviation(system), u), CrushMode::kAllOffDiagonal);
  return prep;
}

}  // namespace ppsim
