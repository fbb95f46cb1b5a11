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

// Dense complex linear algebra for one, two and three qubits.
//
// Basis ordering is big-endian throughout the library: qubit 1 is the most
// significant bit of the basis index, so |jkl> has index 4j + 2k + l.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>

#include "triqubath/errors.hpp"

namespace triqubath {

using Complex = std::complex<double>;

inline constexpr int kMaxDim = 8;

using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxDim, kMaxDim>;
using ComplexVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;
using RealVector = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = -1e-10;
inline constexpr double kNormTol = 1e-12;

inline bool is_valid_dim(Eigen::Index d) { return d == 2 || d == 4 || d == 8; }

inline int qubit_count(Eigen::Index dim) {
  switch (dim) {
    case 2: return 1;
    case 4: return 2;
    case 8: return 3;
    default: throw InvalidArgument("dimension " + std::to_string(dim) + " not in {2, 4, 8}");
  }
}

inline void require_valid_matrix(const ComplexMatrix& m) {
  if (m.rows() != m.cols() || !is_valid_dim(m.rows()))
    throw InvalidArgument("matrix must be square with dimension 2, 4 or 8");
  if (!m.allFinite()) throw InvalidArgument("matrix has non-finite entries");
}

inline double max_abs_entry(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double hermiticity_defect(const ComplexMatrix& m) {
  return max_abs_entry(m - m.adjoint());
}

inline ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  return (m + m.adjoint()) * 0.5;
}

/// Kronecker product a (x) b, a on the more significant qubits.
inline ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Eigen::Index da = a.rows(), db = b.rows();
  if (a.cols() != da || b.cols() != db) throw InvalidArgument("tensor: operands must be square");
  if (da * db > kMaxDim) throw InvalidArgument("tensor: result dimension exceeds 8");
  ComplexMatrix out(da * db, da * db);
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index j = 0; j < da; ++j) out.block(i * db, j * db, db, db) = a(i, j) * b;
  return out;
}

inline ComplexVector tensor(const ComplexVector& a, const ComplexVector& b) {
  if (a.size() * b.size() > kMaxDim) throw InvalidArgument("tensor: result dimension exceeds 8");
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

// ---------------------------------------------------------------------------
// Pauli matrices

namespace pauli {
inline ComplexMatrix identity() { return ComplexMatrix::Identity(2, 2); }
inline ComplexMatrix x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}
inline ComplexMatrix y() {
  ComplexMatrix m(2, 2);
  m << 0.0, Complex(0, -1), Complex(0, 1), 0.0;
  return m;
}
inline ComplexMatrix z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}
}  // namespace pauli

// ---------------------------------------------------------------------------
// Spectral decomposition

struct HermitianEigen {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // orthonormal columns

  ComplexMatrix reconstruct() const {
    return vectors * values.cast<Complex>().asDiagonal() * vectors.adjoint();
  }
};

inline HermitianEigen herm_eig(const ComplexMatrix& m) {
  require_valid_matrix(m);
  if (hermiticity_defect(m) > 1e-10) throw InvalidArgument("herm_eig: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(m));
  if (solver.info() != Eigen::Success) throw NumericalError("herm_eig: eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

inline RealVector herm_eigenvalues(const ComplexMatrix& m) {
  require_valid_matrix(m);
  if (hermiticity_defect(m) > 1e-10) throw InvalidArgument("herm_eig: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(m), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("herm_eig: eigensolver did not converge");
  return solver.eigenvalues();
}

inline double trace_norm(const ComplexMatrix& m) { return herm_eigenvalues(m).cwiseAbs().sum(); }

// ---------------------------------------------------------------------------
// States

/// Normalized state vector of one to three qubits.
class PureState {
 public:
  explicit PureState(ComplexVector amplitudes) : amp_(std::move(amplitudes)) {
    if (!is_valid_dim(amp_.size())) throw InvalidArgument("PureState: dimension not in {2, 4, 8}");
    if (!amp_.allFinite()) throw InvalidArgument("PureState: non-finite amplitude");
    if (std::abs(amp_.squaredNorm() - 1.0) > kNormTol)
      throw InvalidArgument("PureState: amplitudes not normalized");
  }

  /// Normalizes `v` first; rejects the zero vector.
  static PureState normalized(const ComplexVector& v) {
    const double n = v.norm();
    if (!(n > 0.0)) throw InvalidArgument("PureState: zero vector");
    return PureState(v / n);
  }

  const ComplexVector& amplitudes() const { return amp_; }
  Eigen::Index dim() const { return amp_.size(); }
  Complex operator[](Eigen::Index i) const { return amp_(i); }

  ComplexMatrix projector() const { return amp_ * amp_.adjoint(); }

 private:
  ComplexVector amp_;
};

/// Hermitian, unit-trace, positive semidefinite operator of dimension 2, 4 or 8.
/// Construction symmetrizes the input and validates every invariant.
class DensityMatrix {
 public:
  explicit DensityMatrix(const ComplexMatrix& m) : m_(checked(m)) {}

  static DensityMatrix from_pure(const PureState& psi) { return DensityMatrix(psi.projector()); }

  static DensityMatrix maximally_mixed(Eigen::Index dim) {
    if (!is_valid_dim(dim)) throw InvalidArgument("maximally_mixed: dimension not in {2, 4, 8}");
    return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
  }

  const ComplexMatrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }
  Complex operator()(Eigen::Index r, Eigen::Index c) const { return m_(r, c); }

  double purity() const { return (m_ * m_).trace().real(); }

 private:
  static ComplexMatrix checked(const ComplexMatrix& raw) {
    require_valid_matrix(raw);
    if (hermiticity_defect(raw) > 1e-10) throw InvalidArgument("DensityMatrix: not Hermitian");
    ComplexMatrix m = hermitian_part(raw);
    if (std::abs(m.trace() - 1.0) > kTraceTol) throw InvalidArgument("DensityMatrix: trace != 1");
    if (herm_eigenvalues(m).minCoeff() < kPsdTol)
      throw InvalidArgument("DensityMatrix: negative eigenvalue");
    return m;
  }

  ComplexMatrix m_;
};

/// The three single-qubit cuts of a three-qubit system.
enum class Bipartition { Cut1_23 = 0, Cut2_13 = 1, Cut3_12 = 2 };

inline constexpr std::array<Bipartition, 3> kAllCuts = {Bipartition::Cut1_23, Bipartition::Cut2_13,
                                                        Bipartition::Cut3_12};

/// Zero-based index of the single qubit split off by `cut`.
inline constexpr int single_party(Bipartition cut) { return static_cast<int>(cut); }

inline std::string to_string(Bipartition cut) {
  switch (cut) {
    case Bipartition::Cut1_23: return "1|23";
    case Bipartition::Cut2_13: return "2|13";
    case Bipartition::Cut3_12: return "3|12";
  }
  return "?";
}

namespace detail {
inline int bit_of(int index, int qubit, int nqubits) { return (index >> (nqubits - 1 - qubit)) & 1; }
}  // namespace detail

/// Reduced state on the qubits selected by `keep` (zero-based, any order is
/// normalized to ascending). The remaining qubits are traced out.
inline DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<int> keep) {
  const int n = qubit_count(rho.dim());
  std::array<bool, 3> kept{false, false, false};
  int nk = 0;
  for (int q : keep) {
    if (q < 0 || q >= n || kept[static_cast<std::size_t>(q)])
      throw InvalidArgument("partial_trace: invalid qubit selection");
    kept[static_cast<std::size_t>(q)] = true;
    ++nk;
  }
  if (nk == 0 || nk == n) throw InvalidArgument("partial_trace: must keep a proper subset");

  auto split = [&](int idx, int& kidx, int& tidx) {
    kidx = tidx = 0;
    for (int q = 0; q < n; ++q) {
      const int b = detail::bit_of(idx, q, n);
      if (kept[static_cast<std::size_t>(q)]) kidx = (kidx << 1) | b;
      else tidx = (tidx << 1) | b;
    }
  };
  const int dk = 1 << nk;
  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  const auto& m = rho.matrix();
  for (int r = 0; r < rho.dim(); ++r) {
    int kr, tr;
    split(r, kr, tr);
    for (int c = 0; c < rho.dim(); ++c) {
      int kc, tc;
      split(c, kc, tc);
      if (tr == tc) out(kr, kc) += m(r, c);
    }
  }
  return DensityMatrix(out);
}

/// Reduced state of the single qubit split off by `cut` (side A).
inline DensityMatrix partial_trace(const DensityMatrix& rho, Bipartition cut) {
  return partial_trace(rho, {single_party(cut)});
}

/// Partial transpose on one qubit. Works for any supported dimension.
inline ComplexMatrix partial_transpose(const ComplexMatrix& m, int qubit) {
  require_valid_matrix(m);
  const int n = qubit_count(m.rows());
  if (qubit < 0 || qubit >= n) throw InvalidArgument("partial_transpose: invalid qubit");
  const int mask = 1 << (n - 1 - qubit);
  ComplexMatrix out(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) {
      // swap the bit of `qubit` between row and column index
      const int rb = r & mask, cb = c & mask;
      out((r & ~mask) | cb, (c & ~mask) | rb) = m(r, c);
    }
  return out;
}

inline ComplexMatrix partial_transpose(const DensityMatrix& rho, Bipartition cut) {
  if (rho.dim() != 8) throw InvalidArgument("partial_transpose: three-qubit state required");
  return partial_transpose(rho.matrix(), single_party(cut));
}

}  // namespace triqubath
