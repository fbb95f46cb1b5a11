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

// Three qubits dephasing in a common bath through S = Z1 + l2 Z2 + l3 Z3.
//
// The reduced density matrix evolves entrywise in the eigenbasis of S:
//   <s|rho|s'> -> exp(-(s - s')^2 f + i (s^2 - s'^2) phi) <s|rho_0|s'>
// with (f, phi) the two bath functions. Everything here works on (f, phi)
// directly; time enters through bath.hpp.

#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

#include "triqubath/errors.hpp"
#include "triqubath/linalg.hpp"

namespace triqubath {

/// Tolerance for every comparison between coupling constants.
inline constexpr double kDegeneracyTol = 1e-9;

/// Relative couplings of qubits 2 and 3 (qubit 1 has coupling 1).
/// Invariant: 1 >= lambda2 >= lambda3 >= 0.
class CouplingParams {
 public:
  CouplingParams(double lambda2, double lambda3) : l2_(lambda2), l3_(lambda3) {
    if (!std::isfinite(l2_) || !std::isfinite(l3_))
      throw InvalidArgument("coupling constants must be finite");
    if (!(1.0 >= l2_ && l2_ >= l3_ && l3_ >= 0.0))
      throw InvalidArgument("coupling constants must satisfy 1 >= lambda2 >= lambda3 >= 0");
  }

  double lambda2() const { return l2_; }
  double lambda3() const { return l3_; }

 private:
  double l2_;
  double l3_;
};

/// A point (f, phi) of the quadrant f >= 0, phi >= 0.
class DephasingPoint {
 public:
  DephasingPoint(double f, double phi) : f_(f), phi_(phi) {
    if (!std::isfinite(f_) || !std::isfinite(phi_) || f_ < 0.0 || phi_ < 0.0)
      throw InvalidArgument("dephasing point must be finite with f >= 0 and phi >= 0");
  }

  double f() const { return f_; }
  double phi() const { return phi_; }

 private:
  double f_;
  double phi_;
};

/// |phi_1>|phi_2>|phi_3> with |phi_j> = alpha_j|0> + beta_j|1>.
class ProductState {
 public:
  using Factor = std::array<Complex, 2>;

  explicit ProductState(const std::array<Factor, 3>& factors) : factors_(factors) {
    for (const auto& fac : factors_) {
      if (!std::isfinite(std::abs(fac[0])) || !std::isfinite(std::abs(fac[1])))
        throw InvalidArgument("ProductState: non-finite amplitude");
      if (std::abs(std::norm(fac[0]) + std::norm(fac[1]) - 1.0) > kNormTol)
        throw InvalidArgument("ProductState: factor not normalized");
    }
  }

  static ProductState plus() {
    const double a = 1.0 / std::sqrt(2.0);
    return ProductState({Factor{a, a}, Factor{a, a}, Factor{a, a}});
  }

  const Factor& factor(int qubit) const { return factors_.at(static_cast<std::size_t>(qubit)); }

  ComplexVector vector() const {
    ComplexVector v(8);
    for (int i = 0; i < 8; ++i)
      v(i) = factors_[0][(i >> 2) & 1] * factors_[1][(i >> 1) & 1] * factors_[2][i & 1];
    return v;
  }

 private:
  std::array<Factor, 3> factors_;
};

/// Eigenvalues s_jkl = (-1)^j + (-1)^k l2 + (-1)^l l3 of S, indexed by 4j+2k+l.
inline std::array<double, 8> eigenvalues_S(const CouplingParams& c) {
  std::array<double, 8> s{};
  for (int i = 0; i < 8; ++i) {
    const double z1 = (i & 4) ? -1.0 : 1.0;
    const double z2 = (i & 2) ? -1.0 : 1.0;
    const double z3 = (i & 1) ? -1.0 : 1.0;
    s[static_cast<std::size_t>(i)] = z1 + z2 * c.lambda2() + z3 * c.lambda3();
  }
  return s;
}

/// Exact state at (f, phi) starting from rho0.
inline DensityMatrix evolve(const DensityMatrix& rho0, const CouplingParams& c,
                            const DephasingPoint& p) {
  if (rho0.dim() != 8) throw InvalidArgument("evolve: three-qubit state required");
  const auto s = eigenvalues_S(c);
  const auto& m0 = rho0.matrix();
  ComplexMatrix m(8, 8);
  for (int r = 0; r < 8; ++r) {
    m(r, r) = m0(r, r);
    for (int q = r + 1; q < 8; ++q) {
      const double sr = s[static_cast<std::size_t>(r)], sq = s[static_cast<std::size_t>(q)];
      const double d = sr - sq;
      const Complex factor =
          std::exp(-d * d * p.f()) * std::polar(1.0, (sr * sr - sq * sq) * p.phi());
      m(r, q) = factor * m0(r, q);
      m(q, r) = std::conj(m(r, q));
    }
  }
  try {
    return DensityMatrix(m);
  } catch (const InvalidArgument& e) {
    throw InvariantViolation(std::string("evolve produced an invalid state: ") + e.what());
  }
}

inline DensityMatrix initial_product_state(const ProductState& ps) {
  const ComplexVector v = ps.vector();
  return DensityMatrix(v * v.adjoint());
}

/// Maps a state evolved from |+++> to the state evolved from `ps`, using the
/// diagonal map F = (x)_j sqrt(2) diag(alpha_j, beta_j) with F|+++> = |ps>.
/// Throws DegenerateFactor if some factor is |0> or |1>.
inline DensityMatrix diagonal_gl_transform(const ProductState& ps, const DensityMatrix& rho_plus) {
  if (rho_plus.dim() != 8) throw InvalidArgument("diagonal_gl_transform: three-qubit state required");
  for (int q = 0; q < 3; ++q) {
    const auto& fac = ps.factor(q);
    if (std::abs(fac[0]) <= kNormTol || std::abs(fac[1]) <= kNormTol) throw DegenerateFactor(q);
  }
  const ComplexVector diag = ps.vector() * std::sqrt(8.0);
  ComplexMatrix m = diag.asDiagonal() * rho_plus.matrix() * diag.conjugate().asDiagonal();
  const Complex tr = m.trace();
  return DensityMatrix(m / tr.real());
}

/// Groups basis indices into eigenspaces of S; returns a group label per index.
inline std::array<int, 8> eigenspace_labels(const CouplingParams& c) {
  const auto s = eigenvalues_S(c);
  std::array<int, 8> order{};
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return s[static_cast<std::size_t>(a)] < s[static_cast<std::size_t>(b)];
  });
  std::array<int, 8> label{};
  int group = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k > 0 && s[static_cast<std::size_t>(order[k])] - s[static_cast<std::size_t>(order[k - 1])] >
                     kDegeneracyTol)
      ++group;
    label[static_cast<std::size_t>(order[k])] = group;
  }
  return label;
}

/// f -> infinity limit: sum_r P_r rho0 P_r over the eigenspace projectors of S.
inline DensityMatrix asymptotic_state(const CouplingParams& c, const DensityMatrix& rho0) {
  if (rho0.dim() != 8) throw InvalidArgument("asymptotic_state: three-qubit state required");
  const auto label = eigenspace_labels(c);
  ComplexMatrix m = rho0.matrix();
  for (int r = 0; r < 8; ++r)
    for (int q = 0; q < 8; ++q)
      if (label[static_cast<std::size_t>(r)] != label[static_cast<std::size_t>(q)]) m(r, q) = 0.0;
  return DensityMatrix(m);
}

enum class SpecialCase {
  SumOne,          // l2 + l3 = 1
  SymmetricOne,    // l2 = l3 = 1
  SymmetricHalf,   // l2 = l3 = 1/2
  SymmetricOther,  // l2 = l3 not in {0, 1/2, 1}; also l2 = 1 (qubits 1 and 3 exchanged)
  ThirdDecoupled,  // l3 = 0 < l2
  AllDecoupled,    // l2 = l3 = 0
  Generic,
};

inline std::string to_string(SpecialCase c) {
  switch (c) {
    case SpecialCase::SumOne: return "SUM_ONE";
    case SpecialCase::SymmetricOne: return "SYMMETRIC_ONE";
    case SpecialCase::SymmetricHalf: return "SYMMETRIC_HALF";
    case SpecialCase::SymmetricOther: return "SYMMETRIC_OTHER";
    case SpecialCase::ThirdDecoupled: return "THIRD_DECOUPLED";
    case SpecialCase::AllDecoupled: return "ALL_DECOUPLED";
    case SpecialCase::Generic: return "GENERIC";
  }
  return "?";
}

inline SpecialCase detect_special_case(const CouplingParams& c) {
  auto near = [](double a, double b) { return std::abs(a - b) <= kDegeneracyTol; };
  const double l2 = c.lambda2(), l3 = c.lambda3();
  if (near(l2, 0.0) && near(l3, 0.0)) return SpecialCase::AllDecoupled;
  if (near(l3, 0.0)) return SpecialCase::ThirdDecoupled;
  if (near(l2, 1.0) && near(l3, 1.0)) return SpecialCase::SymmetricOne;
  if (near(l2, 0.5) && near(l3, 0.5)) return SpecialCase::SymmetricHalf;
  if (near(l2 + l3, 1.0)) return SpecialCase::SumOne;
  if (near(l2, l3) || near(l2, 1.0)) return SpecialCase::SymmetricOther;
  return SpecialCase::Generic;
}

/// Parses "0.25", "1e-3", "2/3" or "-7/12". Rationals are parsed as exact
/// integers and divided once.
inline double parse_real(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.empty()) throw InvalidArgument("empty number");
  const auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    const auto num = trim(text.substr(0, slash));
    const auto den = trim(text.substr(slash + 1));
    std::int64_t p = 0, q = 0;
    auto r1 = std::from_chars(num.data(), num.data() + num.size(), p);
    auto r2 = std::from_chars(den.data(), den.data() + den.size(), q);
    if (r1.ec != std::errc{} || r1.ptr != num.data() + num.size() || r2.ec != std::errc{} ||
        r2.ptr != den.data() + den.size())
      throw InvalidArgument("malformed rational '" + std::string(text) + "'");
    if (q == 0) throw InvalidArgument("zero denominator in '" + std::string(text) + "'");
    return static_cast<double>(p) / static_cast<double>(q);
  }
  double v = 0.0;
  auto r = std::from_chars(text.data(), text.data() + text.size(), v);
  if (r.ec != std::errc{} || r.ptr != text.data() + text.size() || !std::isfinite(v))
    throw InvalidArgument("malformed number '" + std::string(text) + "'");
  return v;
}

}  // namespace triqubath
