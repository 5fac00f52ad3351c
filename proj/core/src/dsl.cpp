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

#include "ppsim/dsl.hpp"

#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

#include "ppsim/hogg.hpp"

namespace ppsim::dsl {
namespace {

struct Token {
  std::string text;
  int line = 1;
  int column = 1;
};

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  const auto advance = [&] {
    if (src[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance();
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
    } else if (c == '{' || c == '}' || c == ';') {
      out.push_back({std::string(1, c), line, col});
      advance();
    } else {
      Token t{{}, line, col};
      while (i < src.size() && !std::isspace(static_cast<unsigned char>(src[i])) &&
             src[i] != '{' && src[i] != '}' && src[i] != ';' && src[i] != '#') {
        t.text.push_back(src[i]);
        advance();
      }
      out.push_back(std::move(t));
    }
  }
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Program program() {
    Program p;
    while (!at_end()) {
      const int line = peek().line;
      p.statements.push_back(statement());
      p.lines.push_back(line);
    }
    return p;
  }

 private:
  bool at_end() const { return pos_ >= tokens_.size(); }

  const Token& peek() const { return tokens_[pos_]; }

  [[noreturn]] void fail(const std::string& msg) const {
    if (at_end()) {
      const int line = tokens_.empty() ? 1 : tokens_.back().line;
      const int col = tokens_.empty() ? 1 : tokens_.back().column + static_cast<int>(tokens_.back().text.size());
      throw SyntaxError(msg + " at end of input", line, col);
    }
    throw SyntaxError(msg + " near '" + peek().text + "'", peek().line, peek().column);
  }

  const Token& next(const char* what) {
    if (at_end()) fail(std::string("expected ") + what);
    return tokens_[pos_++];
  }

  void expect(std::string_view text) {
    if (at_end() || peek().text != text) fail("expected '" + std::string(text) + "'");
    ++pos_;
  }

  Statement statement() {
    const std::string& kw = peek().text;
    if (kw == "block") return block();
    if (kw == "sel") return Block{{sel()}};
    if (kw == "hard") return hard();
    if (kw == "crush") return crush();
    if (kw == "gate") return gate();
    fail("unknown keyword");
  }

  Block block() {
    expect("block");
    expect("{");
    Block b;
    b.pulses.push_back(sel());
    while (!at_end() && peek().text == ";") {
      ++pos_;
      if (!at_end() && peek().text == "}") break;
      const Token& start = peek();
      Sel s = sel();
      for (const auto& other : b.pulses) {
        if ((other.from == s.from && other.to == s.to) || (other.from == s.to && other.to == s.from)) {
          throw SyntaxError("transition repeated within block", start.line, start.column);
        }
      }
      b.pulses.push_back(s);
    }
    expect("}");
    return b;
  }

  Sel sel() {
    const Token& kw = next("'sel'");
    if (kw.text != "sel") {
      --pos_;
      fail("expected 'sel'");
    }
    Sel s;
    s.from = LevelIndex(integer("level"));
    const Token& second = peek();
    s.to = LevelIndex(integer("level"));
    if (s.from == s.to) throw SyntaxError("degenerate transition", second.line, second.column);
    s.axis = axis();
    s.angle_deg = angle();
    return s;
  }

  HardPulse hard() {
    expect("hard");
    HardPulse h;
    if (!at_end() && peek().text == "all") {
      ++pos_;
    } else {
      h.spin = integer("spin index");
    }
    h.axis = axis();
    h.angle_deg = angle();
    return h;
  }

  Crush crush() {
    expect("crush");
    Crush c;
    if (!at_end() && peek().text == "ideal") {
      ++pos_;
    } else if (!at_end() && peek().text == "order") {
      ++pos_;
      c.mode = CrushMode::kCoherenceOrder;
    }
    return c;
  }

  Gate gate() {
    expect("gate");
    Gate g;
    g.name = next("gate name").text;
    if (g.name == "oracle") {
      const Token& t = next("formula");
      try {
        g.arg = hogg::OneSatFormula::parse(t.text).to_string();
      } catch (const InputError& e) {
        throw SyntaxError(e.what(), t.line, t.column);
      }
    } else if (g.name != "walsh" && g.name != "mix") {
      --pos_;
      fail("unknown gate");
    }
    return g;
  }

  int integer(const char* what) {
    const Token& t = next(what);
    int value = 0;
    const auto* end = t.text.data() + t.text.size();
    auto [p, ec] = std::from_chars(t.text.data(), end, value);
    if (ec != std::errc() || p != end || value < 1) {
      throw SyntaxError(std::string("malformed ") + what + " '" + t.text + "'", t.line, t.column);
    }
    return value;
  }

  Axis axis() {
    const Token& t = next("axis");
    if (t.text == "x") return Axis::kX;
    if (t.text == "y") return Axis::kY;
    if (t.text == "z") return Axis::kZ;
    throw SyntaxError("unknown axis '" + t.text + "'", t.line, t.column);
  }

  double angle() {
    const Token& t = next("angle");
    double value = 0.0;
    const char* first = t.text.data();
    const char* end = first + t.text.size();
    if (first != end && *first == '+') ++first;
    auto [p, ec] = std::from_chars(first, end, value);
    if (ec != std::errc() || p != end || !std::isfinite(value)) {
      throw SyntaxError("malformed angle '" + t.text + "'", t.line, t.column);
    }
    return value;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

std::string format_angle(double deg) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, deg);
  return std::string(buf, p);
}

std::string format_sel(const Sel& s) {
  return "sel " + std::to_string(s.from.value()) + " " + std::to_string(s.to.value()) + " " +
         axis_name(s.axis) + " " + format_angle(s.angle_deg);
}

std::string where(std::size_t index, const Program& p) {
  std::string out = "statement " + std::to_string(index + 1);
  if (index < p.lines.size()) out += " (line " + std::to_string(p.lines[index]) + ")";
  return out;
}

constexpr double kDeg = std::numbers::pi / 180.0;

}  // namespace

SyntaxError::SyntaxError(const std::string& message, int line, int column)
    : InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message,
                 "line=" + std::to_string(line) + " column=" + std::to_string(column)),
      line_(line),
      column_(column) {}

Program parse(std::string_view text) { return Parser(tokenize(text)).program(); }

std::string print(const Program& program) {
  std::string out;
  for (const auto& st : program.statements) {
    std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, Block>) {
            out += "block { ";
            for (std::size_t i = 0; i < s.pulses.size(); ++i) {
              if (i) out += " ; ";
              out += format_sel(s.pulses[i]);
            }
            out += " }";
          } else if constexpr (std::is_same_v<T, HardPulse>) {
            out += "hard ";
            out += s.spin ? std::to_string(*s.spin) : std::string("all");
            out += ' ';
            out += axis_name(s.axis);
            out += ' ' + format_angle(s.angle_deg);
          } else if constexpr (std::is_same_v<T, Crush>) {
            out += s.mode == CrushMode::kCoherenceOrder ? "crush order" : "crush";
          } else {
            out += "gate " + s.name;
            if (!s.arg.empty()) out += ' ' + s.arg;
          }
        },
        st);
    out += '\n';
  }
  return out;
}

Program concat(const Program& a, const Program& b) {
  Program out = a;
  out.statements.insert(out.statements.end(), b.statements.begin(), b.statements.end());
  out.lines.insert(out.lines.end(), b.lines.begin(), b.lines.end());
  return out;
}

ChannelSequence compile(const Program& program, const SpinSystem& system) {
  system.validate();
  const int n = system.n_spins();
  const int dim = system.dim();
  ChannelSequence seq{n, {}};
  for (std::size_t i = 0; i < program.statements.size(); ++i) {
    const auto& st = program.statements[i];
    if (const auto* b = std::get_if<Block>(&st)) {
      std::vector<SelectivePulse> pulses;
      for (const auto& s : b->pulses) {
        if (s.from.value() > dim || s.to.value() > dim) {
          throw InputError(where(i, program) + ": level out of range for " + std::to_string(n) + " spins",
                           format_sel(s));
        }
        if (std::popcount(static_cast<unsigned>(s.from.row() ^ s.to.row())) != 1) {
          throw InputError(where(i, program) + ": " + format_sel(s) + " is not a resolvable line",
                           format_sel(s));
        }
        pulses.push_back({s.from, s.to, s.axis, s.angle_deg * kDeg});
      }
      seq.events.emplace_back(UnitaryEvent{expm_unitary(generator(pulses, n))});
    } else if (const auto* h = std::get_if<HardPulse>(&st)) {
      Operator gen = Operator::Zero(dim, dim);
      if (h->spin) {
        if (*h->spin > n) throw InputError(where(i, program) + ": spin index out of range");
        gen = spin_op(*h->spin, h->axis, n);
      } else {
        for (int s = 1; s <= n; ++s) gen += spin_op(s, h->axis, n);
      }
      seq.events.emplace_back(UnitaryEvent{expm_unitary(h->angle_deg * kDeg * gen)});
    } else if (const auto* c = std::get_if<Crush>(&st)) {
      seq.events.emplace_back(CrushEvent{c->mode});
    } else {
      const auto& g = std::get<Gate>(st);
      try {
        if (g.name == "walsh") {
          seq.events.emplace_back(UnitaryEvent{hogg::walsh(n)});
        } else if (g.name == "mix") {
          seq.events.emplace_back(UnitaryEvent{hogg::mixing(n)});
        } else if (g.name == "oracle") {
          seq.events.emplace_back(UnitaryEvent{hogg::phase_oracle(hogg::OneSatFormula::parse(g.arg, n))});
        } else {
          throw InputError("unknown gate '" + g.name + "'");
        }
      } catch (const InputError& e) {
        throw InputError(where(i, program) + ": " + e.what());
      }
    }
  }
  return seq;
}

DeviationMatrix run(const ChannelSequence& seq, const DeviationMatrix& rho0) {
  if (rho0.dim() != (1 << seq.n_spins)) throw InputError("state dimension does not match program");
  DeviationMatrix rho = rho0;
  for (const auto& ev : seq.events) {
    if (const auto* u = std::get_if<UnitaryEvent>(&ev)) {
      rho = evolve(rho, u->u);
    } else {
      rho = crush(rho, std::get<CrushEvent>(ev).mode);
    }
  }
  return rho;
}

}  // namespace ppsim::dsl
