// Copyright 2026 The qmcreach Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qmcreach {

/// Caller passed arguments that violate an operation's preconditions.
class UsageError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Requested register width exceeds the configured qubit cap.
class CapExceeded : public UsageError {
  public:
    CapExceeded(int requested, int cap)
        : UsageError("qubit cap exceeded: " + std::to_string(requested) +
                     " qubits requested, cap is " + std::to_string(cap)),
          requested_(requested), cap_(cap) {}
    int requested() const { return requested_; }
    int cap() const { return cap_; }

  private:
    int requested_;
    int cap_;
};

/// Malformed input text (QASM source, channel file, init spec).
class ParseError : public std::runtime_error {
  public:
    ParseError(std::size_t line, const std::string &message)
        : std::runtime_error(line == 0 ? message
                                       : "line " + std::to_string(line) +
                                             ": " + message),
          line_(line) {}
    /// 1-based source line, 0 when the error has no line context.
    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

/// An internal postcondition failed; indicates a bug or numerical breakdown.
class InvariantViolation : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

} // namespace qmcreach
