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

#include <gtest/gtest.h>

#include "asymptotic_oracles.hpp"
#include "test_util.hpp"

namespace triqubath {
namespace {

using testing::max_diff;

TEST(CouplingParams, Validation) {
  EXPECT_NO_THROW(CouplingParams(1.0, 0.0));
  EXPECT_THROW(CouplingParams(0.3, 0.5), InvalidArgument);
  EXPECT_THROW(CouplingParams(1.2, 0.5), InvalidArgument);
  EXPECT_THROW(CouplingParams(0.5, -0.1), InvalidArgument);
  EXPECT_THROW(CouplingParams(std::nan(""), 0.1), InvalidArgument);
}

TEST(DephasingPoint, Validation) {
  EXPECT_THROW(DephasingPoint(-1.0, 0.0), InvalidArgument);
  EXPECT_THROW(DephasingPoint(0.0, -0.1), InvalidArgument);
  EXPECT_THROW(DephasingPoint(INFINITY, 0.0), InvalidArgument);
}

TEST(EigenvaluesS, SymmetricOne) {
  const auto s = eigenvalues_S(CouplingParams(1, 1));
  const std::array<double, 8> expect = {3, 1, 1, -1, 1, -1, -1, -3};
  EXPECT_EQ(s, expect);
}

TEST(EigenvaluesS, SumOneDegeneracy) {
  const auto s = eigenvalues_S(CouplingParams(2.0 / 3.0, 1.0 / 3.0));
  EXPECT_NEAR(s[3], 0.0, 1e-15);
  EXPECT_NEAR(s[4], 0.0, 1e-15);
}

TEST(EigenvaluesS, Decoupled) {
  const auto s = eigenvalues_S(CouplingParams(0, 0));
  for (int i = 0; i < 8; ++i) EXPECT_EQ(s[static_cast<std::size_t>(i)], i < 4 ? 1.0 : -1.0);
}

TEST(Evolve, IdentityAtOrigin) {
  std::mt19937_64 rng(10);
  const DensityMatrix rho = testing::random_density(rng);
  EXPECT_LE(max_diff(evolve(rho, CouplingParams(0.8, 0.3), DephasingPoint(0, 0)).matrix(), rho.matrix()), 1e-15);
}

TEST(Evolve, DiagonalInvariant) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  const DensityMatrix rho = testing::random_density(rng);
  for (int i = 0; i < 200; ++i) {
    const DensityMatrix out = evolve(rho, CouplingParams(0.7, 0.2), DephasingPoint(u(rng), u(rng)));
    for (int k = 0; k < 8; ++k) EXPECT_LE(std::abs(out(k, k) - rho(k, k)), 1e-15);
  }
}

TEST(Evolve, EntrywiseFormula) {
  const CouplingParams c(0.6, 0.25);
  const auto s = eigenvalues_S(c);
  const double f = 0.37, phi = 1.9;
  const DensityMatrix out = evolve(testing::plus3(), c, DephasingPoint(f, phi));
  for (int r = 0; r < 8; ++r)
    for (int q = 0; q < 8; ++q) {
      const double d = s[r] - s[q];
      const Complex expect = std::exp(Complex(-d * d * f, (s[r] * s[r] - s[q] * s[q]) * phi)) / 8.0;
      EXPECT_NEAR(std::abs(out(r, q) - expect), 0.0, 1e-15);
    }
}

TEST(Evolve, SymmetricOneAtPiOverEightIsGhzClass) {
  const DensityMatrix out = evolve(testing::plus3(), CouplingParams(1, 1), DephasingPoint(0, M_PI / 8));
  EXPECT_NEAR(out.purity(), 1.0, 1e-12);
  const PureState psi = PureState::normalized(herm_eig(out.matrix()).vectors.col(7));
  EXPECT_NEAR(tau3_pure(psi), 1.0, 1e-12);
}

TEST(Evolve, PreservesValidityOnGrid) {
  std::mt19937_64 rng(12);
  const DensityMatrix rho = testing::random_density(rng, 3);
  for (double f = 0; f <= 10; f += 0.5)
    for (double phi = 0; phi <= 10; phi += 0.5) {
      const DensityMatrix out = evolve(rho, CouplingParams(0.9, 0.4), DephasingPoint(f, phi));
      EXPECT_LE(hermiticity_defect(out.matrix()), 1e-12);
      EXPECT_NEAR(out.matrix().trace().real(), 1.0, 1e-12);
      EXPECT_GE(herm_eigenvalues(out.matrix())(0), -1e-10);
    }
}

TEST(Evolve, Semigroup) {
  std::mt19937_64 rng(13);
  const DensityMatrix rho = testing::random_density(rng);
  const CouplingParams c(0.55, 0.45);
  const DensityMatrix two = evolve(evolve(rho, c, DephasingPoint(0.3, 1.1)), c, DephasingPoint(0.9, 0.4));
  const DensityMatrix one = evolve(rho, c, DephasingPoint(1.2, 1.5));
  EXPECT_LE(max_diff(two.matrix(), one.matrix()), 1e-13);
}

TEST(Evolve, ProductStateOnZeroLinesAtMultiplesOfNineQuarterPi) {
  // At f = 0 the 2|13 and 3|12 phases close only when 4 l2 l3 phi is a
  // multiple of pi, i.e. at phi = 9 n pi / 4 for these couplings.
  const CouplingParams c(2.0 / 3.0, 1.0 / 3.0);
  for (int n = 1; n <= 2; ++n) {
    const DensityMatrix out = evolve(testing::plus3(), c, DephasingPoint(0, 9.0 * n * M_PI / 4.0));
    EXPECT_NEAR(out.purity(), 1.0, 1e-12);
    for (int q = 0; q < 3; ++q) EXPECT_NEAR(partial_trace(out, {q}).purity(), 1.0, 1e-12);
  }
}

TEST(Evolve, ThreeQuarterPiLeavesPairEntanglement) {
  const CouplingParams c(2.0 / 3.0, 1.0 / 3.0);
  const DensityMatrix out = evolve(testing::plus3(), c, DephasingPoint(0, 3.0 * M_PI / 4.0));
  EXPECT_NEAR(partial_trace(out, {0}).purity(), 1.0, 1e-12);
  EXPECT_LT(partial_trace(out, {1}).purity(), 0.9);
  EXPECT_NEAR(negativity(out, Bipartition::Cut1_23), 0.0, 1e-12);
  EXPECT_NEAR(negativity(out, Bipartition::Cut2_13), std::sqrt(3.0) / 4.0, 1e-12);
}

TEST(InitialProductState, Plus) {
  const DensityMatrix rho = testing::plus3();
  for (int r = 0; r < 8; ++r)
    for (int q = 0; q < 8; ++q) EXPECT_NEAR(std::abs(rho(r, q) - 0.125), 0.0, 1e-15);
}

TEST(InitialProductState, ZeroZeroZero) {
  const ProductState ps({ProductState::Factor{1, 0}, ProductState::Factor{1, 0}, ProductState::Factor{1, 0}});
  const DensityMatrix rho = initial_product_state(ps);
  EXPECT_EQ(rho(0, 0), Complex(1.0));
  EXPECT_EQ(max_abs_entry(rho.matrix()) , 1.0);
  EXPECT_NEAR(rho.matrix().cwiseAbs().sum(), 1.0, 0.0);
}

TEST(InitialProductState, RandomIsPure) {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 20; ++i) {
    const DensityMatrix rho = initial_product_state(testing::random_product(rng));
    EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-12);
    EXPECT_NEAR(rho.purity(), 1.0, 1e-12);
  }
}

TEST(ProductState, RejectsUnnormalizedFactor) {
  EXPECT_THROW(ProductState({ProductState::Factor{1, 1}, ProductState::Factor{1, 0}, ProductState::Factor{1, 0}}),
               InvalidArgument);
}

TEST(DiagonalGl, PlusIsIdentity) {
  const DensityMatrix rho = evolve(testing::plus3(), CouplingParams(0.8, 0.3), DephasingPoint(0.2, 0.7));
  EXPECT_LE(max_diff(diagonal_gl_transform(ProductState::plus(), rho).matrix(), rho.matrix()), 1e-15);
}

TEST(DiagonalGl, CommutesWithEvolution) {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (int i = 0; i < 100; ++i) {
    const ProductState ps = testing::random_product(rng);
    const CouplingParams c(0.9, 0.35);
    const DephasingPoint p(u(rng), u(rng));
    const DensityMatrix direct = evolve(initial_product_state(ps), c, p);
    const DensityMatrix via = diagonal_gl_transform(ps, evolve(testing::plus3(), c, p));
    EXPECT_LE(max_diff(direct.matrix(), via.matrix()), 1e-12);
  }
}

TEST(DiagonalGl, Tau3ScalingConstantIsEight) {
  // With F = (x)_j sqrt(2) diag(alpha_j, beta_j):
  // tau3(F psi / |F psi|) |F psi|^2 = 8 |prod alpha_j beta_j| tau3(psi).
  std::mt19937_64 rng(16);
  const CouplingParams c(0.8, 0.45);
  for (int i = 0; i < 20; ++i) {
    const ProductState ps = testing::random_product(rng);
    const double phi = 0.1 + 0.3 * i;
    const DensityMatrix plus_t = evolve(testing::plus3(), c, DephasingPoint(0, phi));
    const PureState psi = PureState::normalized(herm_eig(plus_t.matrix()).vectors.col(7));
    ComplexVector fpsi = psi.amplitudes();
    double prod = 1.0;
    for (int k = 0; k < 8; ++k)
      for (int q = 0; q < 3; ++q) fpsi(k) *= std::sqrt(2.0) * ps.factor(q)[static_cast<std::size_t>(detail::bit_of(k, q, 3))];
    for (int q = 0; q < 3; ++q) prod *= std::abs(ps.factor(q)[0] * ps.factor(q)[1]);
    const double n2 = fpsi.squaredNorm();
    const DensityMatrix evolved = evolve(initial_product_state(ps), c, DephasingPoint(0, phi));
    const double direct = tau3_pure(PureState::normalized(herm_eig(evolved.matrix()).vectors.col(7)));
    EXPECT_NEAR(direct * n2, 8.0 * prod * tau3_pure(psi), 1e-10);
  }
}

TEST(DiagonalGl, RejectsBasisFactor) {
  const ProductState ps({ProductState::Factor{1, 0}, ProductState::plus().factor(1), ProductState::plus().factor(2)});
  try {
    diagonal_gl_transform(ps, testing::plus3());
    FAIL() << "expected DegenerateFactor";
  } catch (const DegenerateFactor& e) {
    EXPECT_EQ(e.qubit(), 0);
    EXPECT_NE(std::string(e.what()).find("reduces to two-qubit case"), std::string::npos);
  }
}

TEST(DetectSpecialCase, Labels) {
  EXPECT_EQ(detect_special_case(CouplingParams(2.0 / 3.0, 1.0 / 3.0)), SpecialCase::SumOne);
  EXPECT_EQ(detect_special_case(CouplingParams(1.0 / 3.0, 1.0 / 3.0)), SpecialCase::SymmetricOther);
  EXPECT_EQ(detect_special_case(CouplingParams(0.7, 0.0)), SpecialCase::ThirdDecoupled);
  EXPECT_EQ(detect_special_case(CouplingParams(0.0, 0.0)), SpecialCase::AllDecoupled);
  EXPECT_EQ(detect_special_case(CouplingParams(1.0, 1.0)), SpecialCase::SymmetricOne);
  EXPECT_EQ(detect_special_case(CouplingParams(0.5, 0.5)), SpecialCase::SymmetricHalf);
  EXPECT_EQ(detect_special_case(CouplingParams(M_PI / 4, M_E / 4)), SpecialCase::Generic);
  EXPECT_EQ(detect_special_case(CouplingParams(0.5 + 5e-10, 0.5)), SpecialCase::SymmetricHalf);
}

TEST(AsymptoticState, MatchesHandBuiltRows) {
  for (const auto& row : testing::asymptotic_rows()) {
    const CouplingParams c(row.lambda2, row.lambda3);
    EXPECT_EQ(detect_special_case(c), row.expected_case) << row.name;
    const DensityMatrix a = asymptotic_state(c, testing::plus3());
    EXPECT_LE(max_diff(a.matrix(), row.state), 1e-14) << row.name;
    for (int r = 0; r < 8; ++r)
      for (int q = 0; q < 8; ++q) {
        const double v = std::abs(a(r, q));
        EXPECT_TRUE(v == 0.0 || std::abs(v - 0.125) < 1e-15) << row.name;
      }
    for (Bipartition cut : kAllCuts) EXPECT_LE(negativity(a, cut), 1e-12) << row.name;
  }
}

TEST(AsymptoticState, LargeFLimitForSymmetricRows) {
  // Rows whose smallest nonzero eigenvalue gap is 2 reach the limit at f = 50.
  for (const auto& row : testing::asymptotic_rows()) {
    if (row.expected_case != SpecialCase::SymmetricOne && row.expected_case != SpecialCase::SymmetricHalf) continue;
    const CouplingParams c(row.lambda2, row.lambda3);
    for (double phi : {0.0, 0.7, 3.0}) {
      const DensityMatrix e = evolve(testing::plus3(), c, DephasingPoint(50, phi));
      EXPECT_LE(max_diff(e.matrix(), asymptotic_state(c, testing::plus3()).matrix()), 1e-12) << row.name;
    }
  }
}

TEST(AsymptoticState, ApproachesLimitAtRateOfSmallestGap) {
  // For every row, |evolve - limit| is (1/8) exp(-f dmin^2) with dmin the
  // smallest nonzero eigenvalue gap.
  for (const auto& row : testing::asymptotic_rows()) {
    const CouplingParams c(row.lambda2, row.lambda3);
    const auto s = eigenvalues_S(c);
    double dmin = INFINITY;
    for (double a : s)
      for (double b : s)
        if (std::abs(a - b) > kDegeneracyTol) dmin = std::min(dmin, std::abs(a - b));
    const double f = 50.0;
    const double dev = max_diff(evolve(testing::plus3(), c, DephasingPoint(f, 0.3)).matrix(),
                                asymptotic_state(c, testing::plus3()).matrix());
    EXPECT_NEAR(dev, std::exp(-f * dmin * dmin) / 8.0, 1e-3 * std::exp(-f * dmin * dmin)) << row.name;
  }
}

TEST(ParseReal, Forms) {
  EXPECT_EQ(parse_real("2/3"), 2.0 / 3.0);
  EXPECT_EQ(parse_real(" -7/12 "), -7.0 / 12.0);
  EXPECT_EQ(parse_real("0.25"), 0.25);
  EXPECT_EQ(parse_real("1e-3"), 1e-3);
  EXPECT_THROW(parse_real("1/0"), InvalidArgument);
  EXPECT_THROW(parse_real("abc"), InvalidArgument);
  EXPECT_THROW(parse_real(""), InvalidArgument);
}

}  // namespace
}  // namespace triqubath
