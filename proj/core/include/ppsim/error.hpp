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

#include <charconv>
#include <stdexcept>
#include <string>

namespace ppsim {

/// Error categories. The numeric values are the CLI exit codes.
enum class ErrorKind : int {
  kInput = 1,
  kNoSolution = 2,
  kPrecondition = 3,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string context = {})
      : std::runtime_error(message), kind_(kind), context_(std::move(context)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& context() const noexcept { return context_; }

 private:
  ErrorKind kind_;
  std::string context_;
};

/// Malformed user input: bad bitstrings, out-of-range indices, parse errors.
class InputError : public Error {
 public:
  explicit InputError(const std::string& message, std::string context = {})
      : Error(ErrorKind::kInput, message, std::move(context)) {}
};

/// Violated operation contract (non-Hermitian generator, state that is not
/// pseudo-pure, rank-deficient tomography design, ...).
class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& message, std::string context = {})
      : Error(ErrorKind::kPrecondition, message, std::move(context)) {}
};

class NoSolutionError : public Error {
 public:
  NoSolutionError(const std::string& message, double best_residual)
      : Error(ErrorKind::kNoSolution, message,
              "best_residual=" + format_residual(best_residual)),
        best_residual_(best_residual) {}

  double best_residual() const noexcept { return best_residual_; }

 private:
  static std::string format_residual(double value) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
  }

  double best_residual_;
};

}  // namespace ppsim
