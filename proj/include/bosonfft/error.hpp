// Copyright 2026 The bosonfft Authors
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

#include <stdexcept>
#include <string>

namespace bosonfft {

enum class ErrorKind {
  dimension,
  size,
  mismatch,
  capacity,
  initialization,
  undefined,
  io,
  validation,
};

/// Base class for every error the engine raises. The kind is stable and is
/// what the command-line tool maps onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Non-square matrix, zero modes, or a state whose length does not match.
struct DimensionError : Error {
  explicit DimensionError(const std::string& what) : Error(ErrorKind::dimension, what) {}
};

/// A cost guard on an exponential-time routine was exceeded.
struct SizeError : Error {
  explicit SizeError(const std::string& what) : Error(ErrorKind::size, what) {}
};

/// Input and output states carry different photon totals.
struct MismatchError : Error {
  explicit MismatchError(const std::string& what) : Error(ErrorKind::mismatch, what) {}
};

/// A frequency plan or sample count does not fit the 63-bit or memory budget.
struct CapacityError : Error {
  explicit CapacityError(const std::string& what) : Error(ErrorKind::capacity, what) {}
};

struct InitializationError : Error {
  explicit InitializationError(const std::string& what) : Error(ErrorKind::initialization, what) {}
};

/// Cosine similarity of an all-zero vector.
struct UndefinedSimilarityError : Error {
  explicit UndefinedSimilarityError(const std::string& what) : Error(ErrorKind::undefined, what) {}
};

struct IoError : Error {
  explicit IoError(const std::string& what) : Error(ErrorKind::io, what) {}
};

/// Malformed user input: unparsable states, bad JSON, inconsistent options.
struct ValidationError : Error {
  explicit ValidationError(const std::string& what) : Error(ErrorKind::validation, what) {}
};

}  // namespace bosonfft
