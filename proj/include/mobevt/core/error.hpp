/*
 * Copyright (c) 2026, mobevt authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mobevt {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input data (bad row, bad date, bad encoding). Carries the
/// 1-based line number when one is known (0 otherwise).
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Invalid configuration or invalid arguments to an operation.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Structurally valid input that violates a data contract (missing series,
/// empty intersection, unknown covariate).
class DataError : public Error {
 public:
  using Error::Error;
};

/// Numerical failure: solver non-convergence, singular system, rank
/// deficiency. The message carries the diagnostics.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace mobevt
