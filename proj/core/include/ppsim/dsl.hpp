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

// A small pulse-program language.
//
//   program   := { statement }
//   statement := block | sel | hard | crush | gate
//   block     := "block" "{" sel { ";" sel } "}"
//   sel       := "sel" INT INT axis ANGLE
//   hard      := "hard" ( "all" | INT ) axis ANGLE
//   crush     := "crush" [ "ideal" | "order" ]
//   gate      := "gate" ( "walsh" | "mix" | "oracle" FORMULA )
//
// Angles are degrees. '#' starts a comment. A bare sel is a one-pulse block.
// Pulses inside one block are applied simultaneously (one exponential);
// separate statements are applied one after another.

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ppsim/error.hpp"
#include "ppsim/spin.hpp"

namespace ppsim::dsl {

class SyntaxError : public InputError {
 public:
  SyntaxError(const std::string& message, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

struct Sel {
  LevelIndex from;
  LevelIndex to;
  Axis axis = Axis::kX;
  double angle_deg = 0.0;
  friend bool operator==(const Sel&, const Sel&) = default;
};

struct Block {
  std::vector<Sel> pulses;
  friend bool operator==(const Block&, const Block&) = default;
};

struct HardPulse {
  std::optional<int> spin;  // nullopt: every spin
  Axis axis = Axis::kX;
  double angle_deg = 0.0;
  friend bool operator==(const HardPulse&, const HardPulse&) = default;
};

struct Crush {
  CrushMode mode = CrushMode::kAllOffDiagonal;
  friend bool operator==(const Crush&, const Crush&) = default;
};

/// Named built-in unitary: walsh, mix, or oracle with a 1-SAT formula.
struct Gate {
  std::string name;
  std::string arg;
  friend bool operator==(const Gate&, const Gate&) = default;
};

using Statement = std::variant<Block, HardPulse, Crush, Gate>;

struct Program {
  std::vector<Statement> statements;
  /// 1-based source line of each statement.
  std::vector<int> lines;

  /// Compares statements only; source positions are ignored.
  friend bool operator==(const Program& a, const Program& b) {
    return a.statements == b.statements;
  }
};

Program parse(std::string_view text);
/// Canonical text; parse(print(p)) == p.
std::string print(const Program& program);
Program concat(const Program& a, const Program& b);

struct UnitaryEvent {
  Operator u;
};
struct CrushEvent {
  CrushMode mode = CrushMode::kAllOffDiagonal;
};
using ChannelEvent = std::variant<UnitaryEvent, CrushEvent>;

struct ChannelSequence {
  int n_spins = 0;
  std::vector<ChannelEvent> events;
};

ChannelSequence compile(const Program& program, const SpinSystem& system);
DeviationMatrix run(const ChannelSequence& seq, const DeviationMatrix& rho0);

}  // namespace ppsim::dsl
