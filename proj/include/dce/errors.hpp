// Copyright (c) 2026 The dce-bands authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0.txt
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace dce {

  /// Input violates a documented invariant. Maps to CLI exit status 1.
  class ValidationError : public std::invalid_argument {
  public:
    ValidationError(std::string field, const std::string &message)
        : std::invalid_argument(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}

    const std::string &field() const noexcept { return field_; }

  private:
    std::string field_;
  };

  /// Evaluation could not produce a trustworthy number. Maps to CLI exit status 2.
  class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
  };

  class SingularEvaluationError : public NumericalError {
  public:
    using NumericalError::NumericalError;
  };

  class ResolutionError : public NumericalError {
  public:
    ResolutionError(const std::string &message, double estimate)
        : NumericalError(message), estimate_(estimate) {}
    double estimate() const noexcept { return estimate_; }

  private:
    double estimate_;
  };

  class QuadratureError : public NumericalError {
  public:
    QuadratureError(const std::string &message, double estimate)
        : NumericalError(message), estimate_(estimate) {}
    /// Error estimate reached before giving up.
    double estimate() const noexcept { return estimate_; }

  private:
    double estimate_;
  };

} // namespace dce
