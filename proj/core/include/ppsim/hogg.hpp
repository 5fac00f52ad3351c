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

// Hogg's single-step search for maximally constrained 1-SAT over two
// variables, applied by conjugation to a pseudo-pure deviation matrix.
//
// Variable k is carried by spin k; bit 1 means the variable is true.

#include <string>
#include <string_view>
#include <vector>

#include "ppsim/spin.hpp"

namespace ppsim::hogg {

struct Literal {
  int var = 1;  // 1-based
  bool negated = false;

  friend bool operator==(const Literal&, const Literal&) = default;
};

struct OneSatFormula {
  int n_vars = 2;
  std::vector<Literal> clauses;

  /// Parses "V1&!V2". Whitespace is ignored; an empty string has no clauses.
  static OneSatFormula parse(std::string_view text, int n_vars = 2);
  std::string to_string() const;
  bool maximally_constrained() const;

  friend bool operator==(const OneSatFormula&, const OneSatFormula&) = default;
};

/// Number of clauses violated by the assignment.
int conflicts(std::string_view assignment, const OneSatFormula& formula);

/// diag(i^c(s)).
Operator phase_oracle(const OneSatFormula& formula);
/// Normalized n-spin Walsh-Hadamard transform.
Operator walsh(int n_spins);
/// W D W with D_rr = i^(h(r) - 1), h the Hamming weight.
Operator mixing(int n_spins);
/// mixing * phase_oracle * walsh.
Operator search_unitary(const OneSatFormula& formula);

struct HoggResult {
  DeviationMatrix rho_final;
  /// Pure-part weight per assignment, indexed by level - 1.
  std::vector<double> probabilities;
};

/// Requires rho_pp to be pseudo-pure at |00> within tol.
HoggResult run(const DeviationMatrix& rho_pp, const OneSatFormula& formula,
               double tol = kPseudoPureTol);

}  // namespace ppsim::hogg
