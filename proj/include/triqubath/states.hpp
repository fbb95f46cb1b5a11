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

// Named states used throughout the library and its tests.

#pragma once

#include <cmath>
#include <string_view>

#include "triqubath/linalg.hpp"

namespace triqubath::states {

/// Computational basis ket from a bit string such as "011".
inline PureState ket(std::string_view bits) {
  const int n = static_cast<int>(bits.size());
  if (n < 1 || n > 3) throw InvalidArgument("ket: one to three qubits");
  int idx = 0;
  for (char b : bits) {
    if (b != '0' && b != '1') throw InvalidArgument("ket: bits must be 0 or 1");
    idx = (idx << 1) | (b - '0');
  }
  ComplexVector v = ComplexVector::Zero(1 << n);
  v(idx) = 1.0;
  return PureState(v);
}

inline PureState superpose(std::initializer_list<std::string_view> kets) {
  ComplexVector v;
  bool first = true;
  for (auto k : kets) {
    if (first) {
      v = ket(k).amplitudes();
      first = false;
    } else {
      v += ket(k).amplitudes();
    }
  }
  return PureState::normalized(v);
}

inline PureState plus() { return superpose({"0", "1"}); }
inline PureState plus3() {
  return PureState(ComplexVector::Constant(8, Complex(1.0 / std::sqrt(8.0), 0.0)));
}
inline PureState ghz() { return superpose({"000", "111"}); }
inline PureState ghz_minus() {
  ComplexVector v = ComplexVector::Zero(8);
  v(0) = 1.0 / std::sqrt(2.0);
  v(7) = -1.0 / std::sqrt(2.0);
  return PureState(v);
}
inline PureState w() { return superpose({"001", "010", "100"}); }
inline PureState w_bar() { return superpose({"110", "101", "011"}); }
/// (|011> + |100>)/sqrt(2)
inline PureState ghz3_plus() { return superpose({"011", "100"}); }
/// (|01> + |10>)/sqrt(2)
inline PureState psi_plus() { return superpose({"01", "10"}); }

inline ComplexMatrix projector(const PureState& s) { return s.projector(); }

}  // namespace triqubath::states
