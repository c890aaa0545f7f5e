// Copyright 2026 The secgame Authors
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

#ifndef SECGAME_ERRORS_HPP_
#define SECGAME_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace secgame {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on an argument was violated (out-of-range probability,
// negative budget, malformed grid, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

// The operation is not defined for the given model variant.
class UnsupportedOperation : public Error {
 public:
  using Error::Error;
};

// An iterative method failed to reach its tolerance. Carries the best
// iterate found and its residual so callers can decide what to do.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, double best, double residual)
      : Error(what), best_(best), residual_(residual) {}

  double best() const { return best_; }
  double residual() const { return residual_; }

 private:
  double best_;
  double residual_;
};

// A computed result contradicts a property that must hold by theory.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

// Throws InputError with `message` unless `condition` holds.
inline void Require(bool condition, const std::string& message) {
  if (!condition) throw InputError(message);
}

}  // namespace secgame

#endif  // SECGAME_ERRORS_HPP_
