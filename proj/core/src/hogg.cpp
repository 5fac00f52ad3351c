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

#include "ppsim/hogg.hpp"

#include <bit>
#include <cctype>
#include <cmath>

#include "ppsim/error.hpp"

namespace ppsim::hogg {
namespace {

constexpr Complex kI{0.0, 1.0};

Complex i_pow(int p) {
  switch (((p % 4) + 4) % 4) {
    case 0: return 1.0;
    case 1: return kI;
    case 2: return -1.0;
    default: return -kI;
  }
}

void require_two(int n) {
  if (n != 2) throw InputError("Hogg search is implemented for two variables only");
}

}  // namespace

OneSatFormula OneSatFormula::parse(std::string_view text, int n_vars) {
  OneSatFormula f;
  f.n_vars = n_vars;
  std::string compact;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
  }
  if (compact.empty()) return f;

  std::size_t pos = 0;
  while (true) {
    Literal lit;
    if (pos < compact.size() && compact[pos] == '!') {
      lit.negated = true;
      ++pos;
    }
    if (pos >= compact.size() || (compact[pos] != 'V' && compact[pos] != 'v')) {
      throw InputError("formula: expected literal V<k>", std::string(text));
    }
    ++pos;
    const std::size_t start = pos;
    while (pos < compact.size() && std::isdigit(static_cast<unsigned char>(compact[pos]))) ++pos;
    if (pos == start || pos - start > 3) throw InputError("formula: bad variable index", std::string(text));
    lit.var = std::stoi(compact.substr(start, pos - start));
    if (lit.var < 1 || lit.var > n_vars) throw InputError("formula: variable out of range", std::string(text));
    for (const auto& other : f.clauses) {
      if (other.var == lit.var) throw InputError("formula: variable appears twice", std::string(text));
    }
    f.clauses.push_back(lit);
    if (pos == compact.size()) break;
    if (compact[pos] != '&') throw InputError("formula: expected '&'", std::string(text));
    ++pos;
  }
  return f;
}

std::string OneSatFormula::to_string() const {
  std::string out;
  for (const auto& lit : clauses) {
    if (!out.empty()) out += '&';
    if (lit.negated) out += '!';
    out += 'V' + std::to_string(lit.var);
  }
  return out;
}

bool OneSatFormula::maximally_constrained() const {
  return static_cast<int>(clauses.size()) == n_vars;
}

int conflicts(std::string_view assignment, const OneSatFormula& formula) {
  if (static_cast<int>(assignment.size()) != formula.n_vars) {
    throw InputError("assignment length does not match variable count", std::string(assignment));
  }
  int count = 0;
  for (const auto& lit : formula.clauses) {
    const char bit = assignment[static_cast<std::size_t>(lit.var - 1)];
    if (bit != '0' && bit != '1') throw InputError("assignment must be a bitstring", std::string(assignment));
    const bool value = bit == '1';
    if (value == lit.negated) ++count;
  }
  return count;
}

Operator phase_oracle(const OneSatFormula& formula) {
  require_two(formula.n_vars);
  const int dim = 1 << formula.n_vars;
  Operator r = Operator::Zero(dim, dim);
  for (int s = 0; s < dim; ++s) {
    r(s, s) = i_pow(conflicts(bits_of(LevelIndex(s + 1), formula.n_vars), formula));
  }
  return r;
}

Operator walsh(int n_spins) {
  const int dim = 1 << n_spins;
  const double norm = std::pow(2.0, -0.5 * n_spins);
  Operator w(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      w(r, c) = (std::popcount(static_cast<unsigned>(r & c)) % 2 ? -norm : norm);
    }
  }
  return w;
}

Operator mixing(int n_spins) {
  require_two(n_spins);
  const int dim = 1 << n_spins;
  Eigen::VectorXcd d(dim);
  for (int r = 0; r < dim; ++r) d(r) = i_pow(std::popcount(static_cast<unsigned>(r)) - 1);
  const Operator w = walsh(n_spins);
  return w * d.asDiagonal() * w;
}

Operator search_unitary(const OneSatFormula& formula) {
  return mixing(formula.n_vars) * phase_oracle(formula) * walsh(formula.n_vars);
}

HoggResult run(const DeviationMatrix& rho_pp, const OneSatFormula& formula, double tol) {
  require_two(formula.n_vars);
  if (rho_pp.n_spins() != formula.n_vars) throw InputError("state and formula sizes differ");
  const PurePart pp = pure_part(rho_pp, tol);
  if (pp.target != LevelIndex(1)) {
    throw PreconditionError("Hogg search expects a pseudo-pure state at |00>",
                            "target=" + bits_of(pp.target, rho_pp.n_spins()));
  }
  HoggResult out{evolve(rho_pp, search_unitary(formula)), {}};
  const Operator pure = (out.rho_final.matrix() - pp.uniform * identity(rho_pp.n_spins())) / pp.pure;
  for (Eigen::Index s = 0; s < pure.rows(); ++s) out.probabilities.push_back(pure(s, s).real());
  return out;
}

}  // namespace ppsim::hogg
