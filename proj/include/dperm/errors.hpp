//
// Copyright 2026 The dperm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef DPERM_ERRORS_HPP_
#define DPERM_ERRORS_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dperm {

// Base class for every failure the library raises on purpose.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A caller-supplied value violates a precondition (bad range, wrong budget
// kind, inconsistent mechanism fields, ...). The message names the offender.
class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& msg) : Error(msg) {}
};

// Command-line or config-file level problem.
class ConfigError : public InvalidArgument {
 public:
  explicit ConfigError(const std::string& msg) : InvalidArgument(msg) {}
};

// A fit or interval request does not match the mechanism that produced the
// inputs (e.g. a closed-form interval on an objective-perturbation fit).
class MechanismMismatch : public InvalidArgument {
 public:
  explicit MechanismMismatch(const std::string& msg) : InvalidArgument(msg) {}
};

// Budget conversion to an approximate-DP pair needs a delta.
class MissingDelta : public InvalidArgument {
 public:
  MissingDelta() : InvalidArgument("delta is required to convert zCDP to an approximate-DP pair") {}
};

// Quantiles of an empty sample set were requested.
class EmptySamples : public InvalidArgument {
 public:
  EmptySamples() : InvalidArgument("empty sample set") {}
};

// Base class for problems with input data (files, records, schemas).
class DataError : public Error {
 public:
  explicit DataError(const std::string& msg) : Error(msg) {}
};

// A record's feature vector leaves the unit ball.
class NormViolation : public DataError {
 public:
  NormViolation(std::int64_t index, double norm)
      : DataError("record " + std::to_string(index) + " has feature norm " + std::to_string(norm) +
                  " > 1"),
        index(index) {}
  std::int64_t index;
};

// A label is neither -1 nor +1.
class BadLabel : public DataError {
 public:
  BadLabel(std::int64_t index, double value)
      : DataError("record " + std::to_string(index) + " has label " + std::to_string(value) +
                  ", expected -1 or +1"),
        index(index) {}
  std::int64_t index;
};

// Shapes disagree: ragged records, mismatched vector lengths, and the like.
class DimensionMismatch : public DataError {
 public:
  explicit DimensionMismatch(const std::string& msg) : DataError(msg) {}
};

// A categorical value is absent from its column's category list.
class UnknownCategory : public DataError {
 public:
  UnknownCategory(const std::string& column, const std::string& value)
      : DataError("column '" + column + "' has value '" + value + "' not in its category list"),
        column(column),
        value(value) {}
  std::string column;
  std::string value;
};

// The target column does not hold exactly two distinct raw values.
class NotBinaryTarget : public DataError {
 public:
  explicit NotBinaryTarget(const std::string& msg) : DataError(msg) {}
};

// An input file could not be parsed.
class ParseError : public DataError {
 public:
  explicit ParseError(const std::string& msg) : DataError(msg) {}
};

// The privacy budget cannot pay for the requested perturbation at this
// problem size.
class BudgetTooSmall : public Error {
 public:
  explicit BudgetTooSmall(const std::string& msg) : Error(msg) {}
};

// The solver exhausted its iteration budget before meeting the tolerance.
class NoConvergence : public Error {
 public:
  explicit NoConvergence(int iterations, const std::string& context = "")
      : Error("no convergence after " + std::to_string(iterations) + " iterations" +
              (context.empty() ? "" : " (" + context + ")")),
        iterations(iterations) {}
  int iterations;
};

// The symmetric eigendecomposition failed to converge.
class EigenFailure : public Error {
 public:
  explicit EigenFailure(const std::string& msg) : Error(msg) {}
};

}  // namespace dperm

#endif  // DPERM_ERRORS_HPP_
