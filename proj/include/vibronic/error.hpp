// Copyright 2026 The vibronic-qpe Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vibronic {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed problem or spectrum file. Carries the offending line (1-based,
/// 0 when unknown) and field name (empty when unknown).
class ParseError : public Error {
  public:
    ParseError(const std::string &message, std::size_t line, std::string field)
        : Error(message), line_(line), field_(std::move(field)) {}

    std::size_t line() const noexcept { return line_; }
    const std::string &field() const noexcept { return field_; }

  private:
    std::size_t line_;
    std::string field_;
};

/// Data that parses but violates a model invariant.
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// Operands live on incompatible spaces or have mismatched sizes.
class DimensionError : public Error {
  public:
    using Error::Error;
};

/// An argument outside its documented domain (cutoff < 1, beta <= 0, ...).
class InvalidArgument : public Error {
  public:
    using Error::Error;
};

/// A numerical precondition failed (non-Hermitian input, eigensolver failure).
class NumericalError : public Error {
  public:
    using Error::Error;
};

/// The emulator would need more qubits than the configured cap.
class QubitBudgetError : public Error {
  public:
    using Error::Error;
};

} // namespace vibronic
