// Copyright 2026 The triqubath Authors
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

namespace triqubath {

/// Precondition violated by caller-supplied data (bad dimension, unnormalized
/// state, out-of-range coupling, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical routine failed to reach its tolerance (quadrature, eigensolver).
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double achieved_error = 0.0)
      : std::runtime_error(what), achieved_error_(achieved_error) {}

  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double achieved_error_;
};

/// An operation produced an object that breaks its own invariants. This is an
/// implementation bug, never a user error.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Product initial state with a |0> or |1> factor: the diagonal transform is
/// not invertible and the dynamics reduces to fewer qubits.
class DegenerateFactor : public InvalidArgument {
 public:
  explicit DegenerateFactor(int qubit)
      : InvalidArgument("factor of qubit " + std::to_string(qubit + 1) +
                        " is |0> or |1>: reduces to two-qubit case"),
        qubit_(qubit) {}

  int qubit() const noexcept { return qubit_; }

 private:
  int qubit_;
};

}  // namespace triqubath
