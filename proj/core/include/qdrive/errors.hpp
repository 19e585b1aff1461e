// Copyright 2026 The qdrive Authors
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

#include <stdexcept>
#include <string>

namespace qdrive {

/// Base class for all qdrive errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Bad input: dimension mismatch, non-Hermitian operator, malformed config, ...
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(what) {}
};

/// A numerical integration left its tolerance budget (trace drift, negativity).
class IntegrationError : public Error {
 public:
  explicit IntegrationError(const std::string& what) : Error(what) {}
};

/// Fock-space truncation too small for the requested state.
class TruncationError : public ValidationError {
 public:
  TruncationError(const std::string& what, int required_n_trunc)
      : ValidationError(what), required_n_trunc_(required_n_trunc) {}
  int required_n_trunc() const { return required_n_trunc_; }

 private:
  int required_n_trunc_;
};

/// Model outside the supported class (e.g. degenerate measurement spectrum).
class ModelError : public ValidationError {
 public:
  explicit ModelError(const std::string& what) : ValidationError(what) {}
};

/// A quantity sits below the numerical floor where the requested
/// post-processing (e.g. a log) is undefined.
class NumericalFloorError : public Error {
 public:
  explicit NumericalFloorError(const std::string& what) : Error(what) {}
};

}  // namespace qdrive
