/*
 * Copyright 2026 The Aquaspec Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace aquaspec {

// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad user input: malformed files, invalid configuration, out-of-contract
// arguments.  The CLI maps these to exit code 2.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Argument outside an operation's precondition.
class ArgumentError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// File could not be parsed; carries a location.
class ParseError : public ValidationError {
 public:
  ParseError(const std::string& path, std::size_t line, const std::string& what)
      : ValidationError(path + ":" + std::to_string(line) + ": " + what),
        path_(path),
        line_(line) {}

  const std::string& path() const { return path_; }
  std::size_t line() const { return line_; }

 private:
  std::string path_;
  std::size_t line_;
};

// Invalid or inconsistent sensor/model configuration.
class ConfigError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Requested spectral range yields no usable grid points.
class RangeError : public Error {
 public:
  using Error::Error;
};

// A band has no spectrometer samples inside its support.
class CoverageError : public Error {
 public:
  using Error::Error;
};

// Metric or ratio is mathematically undefined for the given inputs.
class MetricError : public Error {
 public:
  using Error::Error;
};

// An iterative solver hit its update cap without reaching tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::uint64_t iterations,
                   double last_objective)
      : Error(what + " (iterations=" + std::to_string(iterations) +
              ", last objective=" + std::to_string(last_objective) + ")"),
        iterations_(iterations),
        last_objective_(last_objective) {}

  std::uint64_t iterations() const { return iterations_; }
  double last_objective() const { return last_objective_; }

 private:
  std::uint64_t iterations_;
  double last_objective_;
};

// Every grid point of a hyperparameter search failed to train.
class TuningError : public Error {
 public:
  using Error::Error;
};

}  // namespace aquaspec
