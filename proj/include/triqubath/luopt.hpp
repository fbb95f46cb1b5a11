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

// Multi-start simplex search over products of single-qubit unitaries.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>

#include "triqubath/bounds.hpp"
#include "triqubath/errors.hpp"
#include "triqubath/linalg.hpp"

namespace triqubath {

using Matrix2c = Eigen::Matrix<Complex, 2, 2>;
using Matrix8c = Eigen::Matrix<Complex, 8, 8>;

/// U = Rz(a0) Ry(a1) Rz(a2) with Rz(t) = diag(e^{-it/2}, e^{it/2}).
inline Matrix2c su2_from_angles(const std::array<double, 3>& a) {
  const double c = std::cos(0.5 * a[1]), s = std::sin(0.5 * a[1]);
  const double sum = 0.5 * (a[0] + a[2]), diff = 0.5 * (a[0] - a[2]);
  const double cs = std::cos(sum), ss = std::sin(sum), cd = std::cos(diff), sd = std::sin(diff);
  Matrix2c m;
  m(0, 0) = Complex(c * cs, -c * ss);
  m(0, 1) = Complex(-s * cd, s * sd);
  m(1, 0) = Complex(s * cd, s * sd);
  m(1, 1) = Complex(c * cs, c * ss);
  return m;
}

/// Euler angles for U1 (x) U2 (x) U3, three per qubit.
struct LocalUnitary {
  std::array<double, 9> angles{};

  static LocalUnitary identity() { return {}; }

  Matrix2c factor(int qubit) const {
    const auto q = static_cast<std::size_t>(qubit) * 3;
    return su2_from_angles({angles[q], angles[q + 1], angles[q + 2]});
  }

  Matrix8c matrix() const {
    const Matrix2c u1 = factor(0), u2 = factor(1), u3 = factor(2);
    Matrix8c out;
    for (int r = 0; r < 8; ++r)
      for (int c = 0; c < 8; ++c)
        out(r, c) = u1(r >> 2, c >> 2) * u2((r >> 1) & 1, (c >> 1) & 1) * u3(r & 1, c & 1);
    return out;
  }
};

inline DensityMatrix apply_local_unitary(const DensityMatrix& rho, const LocalUnitary& u) {
  if (rho.dim() != 8) throw InvalidArgument("apply_local_unitary: three-qubit state required");
  const Matrix8c U = u.matrix();
  const Matrix8c m = rho.matrix();
  return DensityMatrix(ComplexMatrix(U * m * U.adjoint()));
}

struct OptimizerConfig {
  int starts = 32;  // random starts, in addition to the identity start
  int max_iterations = 2000;
  double tolerance = 1e-10;
  std::uint64_t seed = 0;
  double initial_step = M_PI / 8.0;

  void validate() const {
    if (starts < 1) throw InvalidArgument("optimizer: starts must be >= 1");
    if (max_iterations < 1) throw InvalidArgument("optimizer: max_iterations must be >= 1");
    if (!(tolerance > 0.0)) throw InvalidArgument("optimizer: tolerance must be > 0");
    if (!(initial_step > 0.0)) throw InvalidArgument("optimizer: initial_step must be > 0");
  }
};

enum class BoundKind { Tau3, Cgme };

struct OptimizeResult {
  LocalUnitary unitary;
  double value = 0.0;           // gated, certified bound at `unitary`
  double raw = 0.0;             // ungated bound expression at `unitary`
  double ghz_fidelity = 0.0;    // <GHZ|U rho U^dag|GHZ>
  bool converged = true;
  long evaluations = 0;
  int best_start = 0;           // 0 = identity start
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Counter-based uniform in [0, 1): a pure function of (seed, stream, counter).
inline double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  const std::uint64_t h = splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ counter);
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

namespace corner {

// Plain complex product; std::complex's operator* carries inf/nan recovery
// that dominates this hot loop.
inline Complex mul(Complex a, Complex b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

// x_a conj(y_b) contracted into the leading qubit of a Dim x Dim block.
template <int Dim>
inline void contract(const Complex* in, const Complex* x, const Complex* y, Complex* out) {
  constexpr int H = Dim / 2;
  Complex w[2][2];
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) w[a][b] = mul(x[a], std::conj(y[b]));
  for (int r = 0; r < H; ++r)
    for (int c = 0; c < H; ++c) {
      Complex acc = 0.0;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) acc += mul(w[a][b], in[(a * H + r) * Dim + b * H + c]);
      out[r * H + c] = acc;
    }
}

}  // namespace corner

// Only the diagonal and <000|.|111> of U rho U^dag are needed. With
// U = U1 (x) U2 (x) U3 each entry is <x y z| rho |x' y' z'> for rows x, y, z of
// the factors, contracted one qubit at a time and shared between entries.
inline GhzCorner rotated_corner(const Matrix8c& rho, const LocalUnitary& u) {
  const Matrix2c f[3] = {u.factor(0), u.factor(1), u.factor(2)};
  Complex row[3][2][2];
  for (int q = 0; q < 3; ++q)
    for (int k = 0; k < 2; ++k)
      for (int a = 0; a < 2; ++a) row[q][k][a] = f[q](k, a);

  Complex m[64];
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 8; ++c) m[r * 8 + c] = rho(r, c);

  GhzCorner out;
  Complex m4[16], m2[4];
  for (int j = 0; j < 2; ++j) {
    corner::contract<8>(m, row[0][j], row[0][j], m4);
    for (int k = 0; k < 2; ++k) {
      corner::contract<4>(m4, row[1][k], row[1][k], m2);
      for (int l = 0; l < 2; ++l) {
        Complex v;
        corner::contract<2>(m2, row[2][l], row[2][l], &v);
        out.populations[static_cast<std::size_t>(4 * j + 2 * k + l)] = v.real();
      }
    }
  }
  corner::contract<8>(m, row[0][0], row[0][1], m4);
  corner::contract<4>(m4, row[1][0], row[1][1], m2);
  corner::contract<2>(m2, row[2][0], row[2][1], &out.coherence);
  return out;
}

inline double raw_bound(BoundKind kind, const GhzCorner& c) {
  return kind == BoundKind::Tau3 ? tau3_witness_raw(c) : cgme_bound_raw(c);
}

// Continuous surrogate that the simplex maximizes: the raw bound, pushed
// down below fidelity 1/2 so the search prefers certifiable regions.
inline double search_objective(BoundKind kind, const GhzCorner& c) {
  const double fid = c.fidelity_aligned();
  const double raw = raw_bound(kind, c);
  return fid >= 0.5 ? raw : raw - 4.0 * (0.5 - fid);
}

template <std::size_t N>
struct SimplexResult {
  std::array<double, N> x{};
  double value = -std::numeric_limits<double>::infinity();
  long evaluations = 0;
  bool converged = false;
};

/// Nelder-Mead maximization. Stops when the best value improves by less than
/// `tol` over one full cycle of N+1 iterations, or when the evaluation budget
/// max_iterations * (N+1) would be exceeded.
template <std::size_t N, class F>
SimplexResult<N> nelder_mead_max(F&& objective, const std::array<double, N>& x0, double step,
                                 int max_iterations, double tol) {
  using Point = std::array<double, N>;
  constexpr std::size_t M = N + 1;
  const long budget = static_cast<long>(max_iterations) * static_cast<long>(M);

  std::array<Point, M> pts;
  std::array<double, M> val;
  SimplexResult<N> res;
  auto eval = [&](const Point& p) {
    ++res.evaluations;
    return objective(p);
  };

  pts[0] = x0;
  val[0] = eval(x0);
  for (std::size_t i = 0; i < N; ++i) {
    pts[i + 1] = x0;
    pts[i + 1][i] += step;
    val[i + 1] = eval(pts[i + 1]);
  }

  std::array<std::size_t, M> order;
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return val[a] > val[b]; });
  };

  sort_simplex();
  double cycle_best = val[order[0]];
  int iteration = 0;
  while (res.evaluations + static_cast<long>(N) + 2 <= budget) {
    const std::size_t worst = order[N], second = order[N - 1], best = order[0];
    Point centroid{};
    for (std::size_t k = 0; k < N; ++k) {
      const auto& p = pts[order[k]];
      for (std::size_t d = 0; d < N; ++d) centroid[d] += p[d] / static_cast<double>(N);
    }
    auto along = [&](double t) {
      Point p;
      for (std::size_t d = 0; d < N; ++d) p[d] = centroid[d] + t * (pts[worst][d] - centroid[d]);
      return p;
    };

    const Point xr = along(-1.0);
    const double fr = eval(xr);
    if (fr > val[best]) {
      const Point xe = along(-2.0);
      const double fe = eval(xe);
      if (fe > fr) {
        pts[worst] = xe;
        val[worst] = fe;
      } else {
        pts[worst] = xr;
        val[worst] = fr;
      }
    } else if (fr > val[second]) {
      pts[worst] = xr;
      val[worst] = fr;
    } else {
      const bool outside = fr > val[worst];
      const Point xc = along(outside ? -0.5 : 0.5);
      const double fc = eval(xc);
      if (fc > (outside ? fr : val[worst])) {
        pts[worst] = xc;
        val[worst] = fc;
      } else {
        for (std::size_t k = 1; k < M; ++k) {
          auto& p = pts[order[k]];
          for (std::size_t d = 0; d < N; ++d) p[d] = pts[best][d] + 0.5 * (p[d] - pts[best][d]);
          val[order[k]] = eval(p);
        }
      }
    }
    sort_simplex();

    if (++iteration % static_cast<int>(M) == 0) {
      const double now = val[order[0]];
      if (now - cycle_best < tol) {
        res.converged = true;
        break;
      }
      cycle_best = now;
    }
  }
  res.x = pts[order[0]];
  res.value = val[order[0]];
  return res;
}

}  // namespace detail

/// Maximizes the selected lower bound over local unitaries. The identity is
/// always the first start, so the result is never worse than not rotating.
/// `stream` separates independent problems sharing one seed (e.g. grid points).
inline OptimizeResult optimize_bound(const DensityMatrix& rho, BoundKind kind,
                                     const OptimizerConfig& cfg, std::uint64_t stream = 0) {
  cfg.validate();
  if (rho.dim() != 8) throw InvalidArgument("optimize_bound: three-qubit state required");
  const Matrix8c m = rho.matrix();

  auto objective = [&](const std::array<double, 9>& x) {
    return detail::search_objective(kind, detail::rotated_corner(m, LocalUnitary{x}));
  };

  auto finish = [&](const LocalUnitary& u) {
    const GhzCorner c = detail::rotated_corner(m, u);
    OptimizeResult r;
    r.unitary = u;
    // Fold the qubit-1 phase that makes <000|.|111> real positive into the
    // outer z rotation.
    r.unitary.angles[0] += std::arg(c.coherence);
    r.ghz_fidelity = c.fidelity_aligned();
    r.raw = detail::raw_bound(kind, c);
    r.value = gate_by_fidelity(r.raw, r.ghz_fidelity);
    return r;
  };

  // Candidates are ranked by certified value, then by the search surrogate so
  // that undetected states still report the most GHZ-like rotation found.
  OptimizeResult best = finish(LocalUnitary::identity());
  double best_score = objective(LocalUnitary::identity().angles);
  long evaluations = 1;

  for (int start = 0; start <= cfg.starts; ++start) {
    std::array<double, 9> x0{};
    if (start > 0)
      for (std::size_t d = 0; d < 9; ++d)
        x0[d] = 2.0 * M_PI *
                detail::counter_uniform(cfg.seed, stream,
                                        static_cast<std::uint64_t>(start) * 16 + d);
    const auto sr = detail::nelder_mead_max<9>(objective, x0, cfg.initial_step,
                                               cfg.max_iterations, cfg.tolerance);
    evaluations += sr.evaluations;
    OptimizeResult cand = finish(LocalUnitary{sr.x});
    cand.converged = sr.converged;
    cand.best_start = start;
    // Strict comparisons keep the lowest start index on ties.
    if (cand.value > best.value || (cand.value == best.value && sr.value > best_score)) {
      best = cand;
      best_score = sr.value;
    } else if (start == 0) {
      best.converged = sr.converged;  // the identity start refined nothing
    }
  }
  best.evaluations = evaluations;
  return best;
}

}  // namespace triqubath
