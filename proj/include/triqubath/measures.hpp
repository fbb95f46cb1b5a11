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

// Entanglement quantifiers and the GHZ / W / biseparable classification.
//
// tau3 here is the square-root convention (tau3(GHZ) = 1, degree two in the
// amplitudes), computed on pure states as
//   tau3 = sqrt| sum_{j = 0, x, z} <psi*| s_j (x) s_y (x) s_y |psi>^2 |,  s_0 = i 1.

#pragma once

#include <Eigen/SVD>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "triqubath/bounds.hpp"
#include "triqubath/linalg.hpp"
#include "triqubath/luopt.hpp"
#include "triqubath/model.hpp"

namespace triqubath {

/// N = (||rho^{T_A}||_1 - 1) / 2, computed as the magnitude of the negative
/// part of the spectrum.
inline double negativity(const DensityMatrix& rho, Bipartition cut) {
  const RealVector ev = herm_eigenvalues(partial_transpose(rho, cut));
  double neg = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) < 0.0) neg -= ev(i);
  return std::min(neg, 0.5);
}

namespace detail {
inline const std::array<ComplexMatrix, 3>& tangle_operators() {
  static const std::array<ComplexMatrix, 3> ops = [] {
    const ComplexMatrix yy = tensor(pauli::y(), pauli::y());
    return std::array<ComplexMatrix, 3>{tensor(Complex(0, 1) * pauli::identity(), yy),
                                        tensor(pauli::x(), yy), tensor(pauli::z(), yy)};
  }();
  return ops;
}
}  // namespace detail

inline double tau3_pure(const PureState& psi) {
  if (psi.dim() != 8) throw InvalidArgument("tau3_pure: three-qubit state required");
  const ComplexVector& v = psi.amplitudes();
  Complex sum = 0.0;
  for (const auto& op : detail::tangle_operators()) {
    const Complex q = v.transpose() * op * v;
    sum += q * q;
  }
  return std::min(1.0, std::sqrt(std::abs(sum)));
}

/// tau3 of the pure f = 0 state evolved from |+++>:
///   (1/2) sqrt| c1 c2 c3 + i s1 s2 s3 - (c1 + c2 + c3) + 2 |
/// with c_j = cos(8 mu_j phi), s_j = sin(8 mu_j phi), where mu_j is the
/// product of the couplings of the two qubits other than j.
inline double tau3_f0_closed_form(const CouplingParams& c, double phi) {
  if (!(phi >= 0.0) || !std::isfinite(phi)) throw InvalidArgument("tau3_f0_closed_form: phi >= 0");
  const std::array<double, 3> mu = {c.lambda2() * c.lambda3(), c.lambda3(), c.lambda2()};
  std::array<double, 3> cs{}, sn{};
  for (std::size_t j = 0; j < 3; ++j) {
    cs[j] = std::cos(8.0 * mu[j] * phi);
    sn[j] = std::sin(8.0 * mu[j] * phi);
  }
  const Complex z(cs[0] * cs[1] * cs[2] - (cs[0] + cs[1] + cs[2]) + 2.0, sn[0] * sn[1] * sn[2]);
  return 0.5 * std::sqrt(std::abs(z));
}

struct CgmePure {
  double value = 0.0;
  Bipartition cut = Bipartition::Cut1_23;
};

/// min over single-qubit cuts of sqrt(2 (1 - tr rho_A^2)), evaluated as twice
/// the product of the two Schmidt coefficients. Ties go to the lowest cut.
inline CgmePure cgme_pure_detail(const PureState& psi) {
  if (psi.dim() != 8) throw InvalidArgument("cgme_pure: three-qubit state required");
  CgmePure best{2.0, Bipartition::Cut1_23};
  for (Bipartition cut : kAllCuts) {
    const int q = single_party(cut);
    Eigen::Matrix<Complex, 2, 4> m;
    for (int i = 0; i < 8; ++i) {
      const int a = detail::bit_of(i, q, 3);
      int rest = 0;
      for (int k = 0; k < 3; ++k)
        if (k != q) rest = (rest << 1) | detail::bit_of(i, k, 3);
      m(a, rest) = psi[i];
    }
    Eigen::JacobiSVD<Eigen::Matrix<Complex, 2, 4>> svd(m);
    const auto sv = svd.singularValues();
    const double c = std::min(1.0, 2.0 * sv(0) * sv(1));
    if (c < best.value) best = {c, cut};
  }
  return best;
}

inline double cgme_pure(const PureState& psi) { return cgme_pure_detail(psi).value; }

/// <GHZ|rho|GHZ> with GHZ = (|000> + |111>)/sqrt(2).
inline double ghz_fidelity(const DensityMatrix& rho) {
  if (rho.dim() != 8) throw InvalidArgument("ghz_fidelity: three-qubit state required");
  return std::clamp(ghz_corner(rho.matrix()).fidelity_plus(), 0.0, 1.0);
}

/// Number of phase samples per angle in the twirl; any value above 4 makes
/// the discrete average equal the continuous one on 8x8 matrices.
inline constexpr int kTwirlPhaseGrid = 8;

/// Average over the local symmetry group of GHZ: qubit permutations, the
/// simultaneous flip X(x)X(x)X, and phase rotations
/// e^{i a Z} (x) e^{i b Z} (x) e^{-i (a + b) Z}.
inline ComplexMatrix ghz_twirl(const ComplexMatrix& rho) {
  if (rho.rows() != 8 || rho.cols() != 8) throw InvalidArgument("ghz_twirl: 8x8 matrix required");
  static const std::array<std::array<int, 3>, 6> perms = {
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

  // Phase average first: it only keeps entries (a, b) whose phase charge
  // vanishes for every (alpha, beta) on the grid.
  ComplexMatrix phased = ComplexMatrix::Zero(8, 8);
  for (int ia = 0; ia < kTwirlPhaseGrid; ++ia)
    for (int ib = 0; ib < kTwirlPhaseGrid; ++ib) {
      const double alpha = 2.0 * M_PI * ia / kTwirlPhaseGrid;
      const double beta = 2.0 * M_PI * ib / kTwirlPhaseGrid;
      const std::array<double, 3> theta = {alpha, beta, -(alpha + beta)};
      std::array<Complex, 8> ph{};
      for (int i = 0; i < 8; ++i) {
        double t = 0.0;
        for (int q = 0; q < 3; ++q)
          t += (detail::bit_of(i, q, 3) ? -1.0 : 1.0) * theta[static_cast<std::size_t>(q)];
        ph[static_cast<std::size_t>(i)] = std::polar(1.0, t);
      }
      for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b)
          phased(a, b) +=
              ph[static_cast<std::size_t>(a)] * std::conj(ph[static_cast<std::size_t>(b)]) * rho(a, b);
    }
  phased /= static_cast<double>(kTwirlPhaseGrid * kTwirlPhaseGrid);

  ComplexMatrix out = ComplexMatrix::Zero(8, 8);
  for (const auto& p : perms)
    for (int flip = 0; flip < 2; ++flip) {
      auto map = [&](int i) {
        int j = 0;
        for (int q = 0; q < 3; ++q) {
          const int b = detail::bit_of(i, p[static_cast<std::size_t>(q)], 3) ^ flip;
          j = (j << 1) | b;
        }
        return j;
      };
      for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) out(map(a), map(b)) += phased(a, b);
    }
  return out / 12.0;
}

namespace detail {
inline ComplexMatrix rotate(const DensityMatrix& rho, const LocalUnitary& u) {
  const Matrix8c U = u.matrix();
  const Matrix8c m = rho.matrix();
  return ComplexMatrix(U * m * U.adjoint());
}

// Local phase on qubit 1 that makes <000|m|111> real and non-negative.
inline ComplexMatrix align_coherence(const ComplexMatrix& m) {
  const double theta = std::arg(m(0, 7));
  ComplexMatrix out = m;
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      const double pa = (a & 4) ? 0.5 : -0.5, pb = (b & 4) ? 0.5 : -0.5;
      out(a, b) *= std::polar(1.0, (pa - pb) * theta);
    }
  return out;
}
}  // namespace detail

/// Lower bound on the GME concurrence of rho, evaluated on U rho U^dag.
inline double cgme_lower_bound(const DensityMatrix& rho, const LocalUnitary& u) {
  if (rho.dim() != 8) throw InvalidArgument("cgme_lower_bound: three-qubit state required");
  const GhzCorner c = ghz_corner(detail::rotate(rho, u));
  return gate_by_fidelity(cgme_bound_raw(c), c.fidelity_aligned());
}

/// Lower bound on tau3: rotate, align the GHZ coherence, project onto the
/// GHZ-symmetric family, then apply tau3 >= 4 F+ + 2 F- - 3. The projection
/// cannot increase tau3 and the witness holds on every pure state, so the
/// convex roof is bounded by the witness value of the projected state.
inline double tau3_lower_bound(const DensityMatrix& rho, const LocalUnitary& u) {
  if (rho.dim() != 8) throw InvalidArgument("tau3_lower_bound: three-qubit state required");
  const ComplexMatrix sym = ghz_twirl(detail::align_coherence(detail::rotate(rho, u)));
  const GhzCorner c = ghz_corner(sym);
  return gate_by_fidelity(tau3_witness_raw(c.fidelity_plus(), c.fidelity_minus()),
                          c.fidelity_plus());
}

enum class EntanglementClass { GHZ, W, BiseparableEntangled, Undetected };

inline std::string to_string(EntanglementClass c) {
  switch (c) {
    case EntanglementClass::GHZ: return "GHZ";
    case EntanglementClass::W: return "W";
    case EntanglementClass::BiseparableEntangled: return "BISEPARABLE_ENTANGLED";
    case EntanglementClass::Undetected: return "UNDETECTED";
  }
  return "?";
}

inline EntanglementClass class_from_string(const std::string& s) {
  if (s == "GHZ") return EntanglementClass::GHZ;
  if (s == "W") return EntanglementClass::W;
  if (s == "BISEPARABLE_ENTANGLED") return EntanglementClass::BiseparableEntangled;
  if (s == "UNDETECTED") return EntanglementClass::Undetected;
  throw InvalidArgument("unknown entanglement class '" + s + "'");
}

struct EntanglementReport {
  std::array<double, 3> negativity{};  // cuts 1|23, 2|13, 3|12
  double tau3_lb = 0.0;
  double cgme_lb = 0.0;
  double ghz_fidelity_opt = 0.0;
  EntanglementClass cls = EntanglementClass::Undetected;
  bool exact = false;                            // pure-state values, not bounds
  Bipartition cgme_cut = Bipartition::Cut1_23;   // minimizing cut (pure states only)
  LocalUnitary tau3_unitary;
  LocalUnitary cgme_unitary;
};

/// Precedence GHZ > W > B > undetected.
inline EntanglementClass class_from_measures(double tau3_lb, double cgme_lb,
                                             const std::array<double, 3>& neg) {
  if (tau3_lb > 0.0) return EntanglementClass::GHZ;
  if (cgme_lb > 0.0) return EntanglementClass::W;
  if (neg[0] > 0.0 || neg[1] > 0.0 || neg[2] > 0.0) return EntanglementClass::BiseparableEntangled;
  return EntanglementClass::Undetected;
}

inline constexpr double kTau3RadicandFloor = 16.0 * std::numeric_limits<double>::epsilon();

struct ClassifyOptions {
  OptimizerConfig optimizer;
  double detection_threshold = 1e-9;  // anything below is reported as zero
  double purity_threshold = 1e-10;    // 1 - purity below this: exact pure-state path
  std::uint64_t stream = 0;           // per-call seed stream (grid index in sweeps)
};

inline EntanglementReport classify(const DensityMatrix& rho, const ClassifyOptions& opt = {}) {
  if (rho.dim() != 8) throw InvalidArgument("classify: three-qubit state required");
  const double thr = opt.detection_threshold;
  auto clip = [thr](double v) { return v < thr ? 0.0 : v; };

  EntanglementReport rep;
  for (Bipartition cut : kAllCuts)
    rep.negativity[static_cast<std::size_t>(single_party(cut))] = clip(negativity(rho, cut));

  const HermitianEigen eig = herm_eig(rho.matrix());
  const double lambda_max = eig.values(7);

  if (1.0 - rho.purity() < opt.purity_threshold) {
    const PureState psi = PureState::normalized(eig.vectors.col(7));
    rep.exact = true;
    // The radicand of tau3 carries absolute rounding of a few eps; below that
    // the square root would report ~1e-8 of pure noise.
    const double t3 = tau3_pure(psi);
    rep.tau3_lb = t3 * t3 <= kTau3RadicandFloor ? 0.0 : clip(t3);
    const CgmePure cg = cgme_pure_detail(psi);
    rep.cgme_lb = clip(cg.value);
    rep.cgme_cut = cg.cut;
    const auto ft = optimize_bound(rho, BoundKind::Tau3, opt.optimizer, 2 * opt.stream);
    const auto fc = optimize_bound(rho, BoundKind::Cgme, opt.optimizer, 2 * opt.stream + 1);
    rep.tau3_unitary = ft.unitary;
    rep.cgme_unitary = fc.unitary;
    rep.ghz_fidelity_opt = std::clamp(std::max(ft.ghz_fidelity, fc.ghz_fidelity), 0.0, 1.0);
  } else if (lambda_max < 0.5) {
    // No local rotation reaches GHZ fidelity 1/2, so neither bound can fire.
    rep.ghz_fidelity_opt = std::clamp(ghz_corner(rho.matrix()).fidelity_aligned(), 0.0, 1.0);
  } else {
    const auto fc = optimize_bound(rho, BoundKind::Cgme, opt.optimizer, 2 * opt.stream + 1);
    rep.cgme_lb = clip(fc.value);
    rep.cgme_unitary = fc.unitary;
    rep.ghz_fidelity_opt = fc.ghz_fidelity;
    // The witness equals 2 F+ + 2 (rho_000 + rho_111) - 3 on the aligned
    // state, so it is at most 4 l1 + 2 l2 - 3 for the top two eigenvalues.
    if (4.0 * lambda_max + 2.0 * eig.values(6) - 3.0 > 0.0) {
      const auto ft = optimize_bound(rho, BoundKind::Tau3, opt.optimizer, 2 * opt.stream);
      rep.tau3_lb = clip(ft.value);
      rep.tau3_unitary = ft.unitary;
      rep.ghz_fidelity_opt = std::max(rep.ghz_fidelity_opt, ft.ghz_fidelity);
    }
    rep.ghz_fidelity_opt = std::clamp(rep.ghz_fidelity_opt, 0.0, 1.0);
  }
  rep.cls = class_from_measures(rep.tau3_lb, rep.cgme_lb, rep.negativity);
  return rep;
}

}  // namespace triqubath
