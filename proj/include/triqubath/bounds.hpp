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

// Lower-bound formulas for the three-tangle and the GME concurrence. Both only
// look at the GHZ "corner" of a state: the eight populations and the coherence
// between |000> and |111>.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include "triqubath/linalg.hpp"

namespace triqubath {

struct GhzCorner {
  std::array<double, 8> populations{};
  Complex coherence{};  // <000|rho|111>

  /// <GHZ+|rho|GHZ+> and <GHZ-|rho|GHZ-> with GHZ+- = (|000> +- |111>)/sqrt(2).
  double fidelity_plus() const { return 0.5 * (populations[0] + populations[7]) + coherence.real(); }
  double fidelity_minus() const {
    return 0.5 * (populations[0] + populations[7]) - coherence.real();
  }
  /// GHZ+ fidelity after the local phase rotation on qubit 1 that makes the
  /// coherence real and positive.
  double fidelity_aligned() const {
    return 0.5 * (populations[0] + populations[7]) + std::abs(coherence);
  }
};

inline GhzCorner ghz_corner(const ComplexMatrix& rho) {
  GhzCorner c;
  for (int k = 0; k < 8; ++k) c.populations[static_cast<std::size_t>(k)] = rho(k, k).real();
  c.coherence = rho(0, 7);
  return c;
}

/// 2 (|rho_18| - sum_{k=2..7} sqrt(rho_kk rho_{9-k,9-k})), unclamped. Each
/// mirrored pair appears twice in the sum.
inline double cgme_bound_raw(const GhzCorner& c) {
  double penalty = 0.0;
  for (std::size_t k = 1; k <= 6; ++k)
    penalty += std::sqrt(std::max(0.0, c.populations[k]) * std::max(0.0, c.populations[7 - k]));
  return 2.0 * (std::abs(c.coherence) - penalty);
}

/// Pure-state witness tau3(psi) >= 4 F+ + 2 F- - 3, unclamped.
inline double tau3_witness_raw(double fidelity_plus, double fidelity_minus) {
  return 4.0 * fidelity_plus + 2.0 * fidelity_minus - 3.0;
}

/// Same witness after phase alignment of the coherence.
inline double tau3_witness_raw(const GhzCorner& c) {
  const double half_pop = 0.5 * (c.populations[0] + c.populations[7]);
  const double a = std::abs(c.coherence);
  return tau3_witness_raw(half_pop + a, half_pop - a);
}

/// Applies the GHZ-fidelity rule: nothing is certified below fidelity 1/2.
inline double gate_by_fidelity(double raw, double fidelity) {
  if (fidelity < 0.5) return 0.0;
  return std::clamp(raw, 0.0, 1.0);
}

}  // namespace triqubath
