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

#include "test_util.hpp"

namespace triqubath {
namespace {

using testing::max_diff;

DensityMatrix pure(const PureState& s) { return DensityMatrix::from_pure(s); }

DensityMatrix ghz_mixture(double p) {
  return DensityMatrix(ComplexMatrix(p * states::ghz().projector() + (1 - p) * ComplexMatrix::Identity(8, 8) / 8.0));
}

DensityMatrix mix_with_noise(const DensityMatrix& rho, double eps) {
  return DensityMatrix(ComplexMatrix((1 - eps) * rho.matrix() + eps * ComplexMatrix::Identity(8, 8) / 8.0));
}

PureState evolved_pure(const CouplingParams& c, double phi) {
  const DensityMatrix r = evolve(testing::plus3(), c, DephasingPoint(0, phi));
  return PureState::normalized(herm_eig(r.matrix()).vectors.col(7));
}

ClassifyOptions quick_options() {
  ClassifyOptions o;
  o.optimizer.starts = 8;
  return o;
}

TEST(Negativity, ProductIsZero) {
  for (Bipartition cut : kAllCuts) EXPECT_NEAR(negativity(testing::plus3(), cut), 0.0, 1e-15);
}

TEST(Negativity, GhzIsHalf) {
  for (Bipartition cut : kAllCuts) EXPECT_NEAR(negativity(pure(states::ghz()), cut), 0.5, 1e-14);
}

TEST(Negativity, SeparableTwoQubitMixtureIsPpt) {
  const ComplexMatrix rho_2s = 0.5 * states::psi_plus().projector() +
                               0.25 * (states::ket("00").projector() + states::ket("11").projector());
  EXPECT_GE(herm_eigenvalues(partial_transpose(rho_2s, 0)).minCoeff(), -1e-15);
}

TEST(Negativity, RangeOnRandomStates) {
  std::mt19937_64 rng(20);
  for (int i = 0; i < 200; ++i) {
    const DensityMatrix rho = i % 2 ? testing::random_density(rng, 1 + i % 8) : pure(testing::random_pure(rng));
    for (Bipartition cut : kAllCuts) {
      const double n = negativity(rho, cut);
      EXPECT_GE(n, 0.0);
      EXPECT_LE(n, 0.5);
    }
  }
}

TEST(Tau3Pure, Examples) {
  EXPECT_NEAR(tau3_pure(states::ghz()), 1.0, 1e-15);
  EXPECT_NEAR(tau3_pure(states::w()), 0.0, 1e-15);
  EXPECT_NEAR(tau3_pure(states::plus3()), 0.0, 1e-15);
  EXPECT_NEAR(tau3_pure(states::ket("010")), 0.0, 1e-15);
}

TEST(Tau3Pure, TwoAmplitudeGhz) {
  const double a = 0.6, b = 0.8;
  ComplexVector v = ComplexVector::Zero(8);
  v(0) = a;
  v(7) = b;
  EXPECT_NEAR(tau3_pure(PureState(v)), 2 * a * b, 1e-15);
}

TEST(Tau3Pure, LocalUnitaryInvariant) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 50; ++i) {
    const PureState psi = testing::random_pure(rng);
    const PureState rotated(ComplexVector(testing::random_unitary(rng).matrix() * psi.amplitudes()));
    EXPECT_NEAR(tau3_pure(psi), tau3_pure(rotated), 1e-12);
  }
}

TEST(Tau3ClosedForm, Examples) {
  EXPECT_NEAR(tau3_f0_closed_form(CouplingParams(0.7, 0.4), 0.0), 0.0, 1e-15);
  EXPECT_NEAR(tau3_f0_closed_form(CouplingParams(1, 1), M_PI / 8), 1.0, 1e-12);
  EXPECT_THROW(tau3_f0_closed_form(CouplingParams(1, 1), -1.0), InvalidArgument);
}

TEST(Tau3ClosedForm, LeadingOrder) {
  for (auto [l2, l3] : {std::pair{2.0 / 3, 1.0 / 3}, {1.0, 1.0}, {0.4, 0.1}})
    for (double phi : {1e-3, 1e-4}) {
      const double lead = 8 * std::sqrt(2.0) * l2 * l3 * std::pow(phi, 1.5);
      EXPECT_NEAR(tau3_f0_closed_form(CouplingParams(l2, l3), phi) / lead, 1.0, 0.01);
    }
}

TEST(Tau3ClosedForm, MatchesEvolution) {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    const double a = u(rng), b = u(rng);
    const CouplingParams c(std::max(a, b), std::min(a, b));
    for (int i = 0; i < 1000; i += 7) {
      const double phi = 3 * M_PI * i / 999.0;
      EXPECT_NEAR(tau3_f0_closed_form(c, phi), tau3_pure(evolved_pure(c, phi)), 1e-10);
    }
  }
}

TEST(CgmePure, Examples) {
  EXPECT_NEAR(cgme_pure(states::ghz()), 1.0, 1e-14);
  EXPECT_NEAR(cgme_pure(states::w()), 2 * std::sqrt(2.0) / 3, 1e-14);
  EXPECT_NEAR(cgme_pure(states::plus3()), 0.0, 1e-14);
}

TEST(CgmePure, TieBreaksTowardFirstCut) {
  EXPECT_EQ(cgme_pure_detail(states::ghz()).cut, Bipartition::Cut1_23);
  // |0> (x) psi+ is a product across 1|23 only.
  const PureState s = states::superpose({"001", "010"});
  const CgmePure c = cgme_pure_detail(s);
  EXPECT_NEAR(c.value, 0.0, 1e-14);
  EXPECT_EQ(c.cut, Bipartition::Cut1_23);
  const PureState t = states::superpose({"000", "101"});  // product across 2|13
  EXPECT_EQ(cgme_pure_detail(t).cut, Bipartition::Cut2_13);
}

TEST(CgmePure, MatchesLinearEntropy) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 100; ++i) {
    const PureState psi = testing::random_pure(rng);
    double best = 2.0;
    for (Bipartition cut : kAllCuts) {
      const double p = partial_trace(pure(psi), cut).purity();
      best = std::min(best, std::sqrt(2 * (1 - p)));
    }
    EXPECT_NEAR(cgme_pure(psi), best, 1e-10);
  }
}

TEST(GhzFidelity, Examples) {
  EXPECT_NEAR(ghz_fidelity(pure(states::ghz())), 1.0, 1e-15);
  EXPECT_NEAR(ghz_fidelity(DensityMatrix::maximally_mixed(8)), 0.125, 1e-15);
  EXPECT_NEAR(ghz_fidelity(testing::plus3()), 0.25, 1e-15);
}

TEST(GhzTwirl, ProjectsOntoSymmetricFamily) {
  std::mt19937_64 rng(24);
  const DensityMatrix rho = testing::random_density(rng);
  const ComplexMatrix t = ghz_twirl(rho.matrix());
  EXPECT_NEAR(t.trace().real(), 1.0, 1e-14);
  EXPECT_LE(max_diff(ghz_twirl(t), t), 1e-15);
  // Only the diagonal and the 000/111 coherence survive, with equal weight
  // inside each Hamming-weight pair class.
  for (int r = 0; r < 8; ++r)
    for (int q = 0; q < 8; ++q)
      if (r != q && !(r == 0 && q == 7) && !(r == 7 && q == 0)) {
        EXPECT_LE(std::abs(t(r, q)), 1e-15);
      }
  EXPECT_NEAR(std::abs(t(0, 0) - t(7, 7)), 0.0, 1e-15);
  for (int k : {2, 4, 3, 5, 6}) EXPECT_NEAR(std::abs(t(k, k) - t(1, 1)), 0.0, 1e-15);
  EXPECT_NEAR(t(0, 7).imag(), 0.0, 1e-15);
  // The GHZ+- fidelities survive.
  const GhzCorner before = ghz_corner(rho.matrix()), after = ghz_corner(t);
  EXPECT_NEAR(before.fidelity_plus(), after.fidelity_plus(), 1e-14);
  EXPECT_NEAR(before.fidelity_minus(), after.fidelity_minus(), 1e-14);
}

TEST(GhzTwirl, GhzFixed) {
  EXPECT_LE(max_diff(ghz_twirl(states::ghz().projector()), states::ghz().projector()), 1e-15);
}

TEST(CgmeLowerBound, Examples) {
  EXPECT_NEAR(cgme_lower_bound(pure(states::ghz()), LocalUnitary::identity()), 1.0, 1e-14);
  for (double p : {0.2, 0.6, 0.7, 0.85, 1.0})
    EXPECT_NEAR(cgme_lower_bound(ghz_mixture(p), LocalUnitary::identity()), std::max(0.0, (5 * p - 3) / 2), 1e-14);
  ComplexMatrix diag = ComplexMatrix::Zero(8, 8);
  diag.diagonal() << 0.3, 0.1, 0.05, 0.05, 0.1, 0.1, 0.1, 0.2;
  EXPECT_EQ(cgme_lower_bound(DensityMatrix(diag), LocalUnitary::identity()), 0.0);
}

TEST(CgmeLowerBound, NeverExceedsPureValue) {
  std::mt19937_64 rng(25);
  for (int i = 0; i < 200; ++i) {
    const PureState psi = testing::random_pure(rng);
    EXPECT_LE(cgme_lower_bound(pure(psi), testing::random_unitary(rng)), cgme_pure(psi) + 1e-12);
  }
}

TEST(Tau3LowerBound, Examples) {
  EXPECT_NEAR(tau3_lower_bound(pure(states::ghz()), LocalUnitary::identity()), 1.0, 1e-14);
  std::mt19937_64 rng(26);
  for (int i = 0; i < 10; ++i)
    EXPECT_EQ(tau3_lower_bound(DensityMatrix::maximally_mixed(8), testing::random_unitary(rng)), 0.0);
  const auto opt = optimize_bound(pure(states::w()), BoundKind::Tau3, OptimizerConfig{});
  EXPECT_EQ(opt.value, 0.0);
  EXPECT_EQ(tau3_lower_bound(pure(states::w()), opt.unitary), 0.0);
  EXPECT_NEAR(opt.ghz_fidelity, 0.75, 1e-6);
}

TEST(Tau3LowerBound, WitnessHoldsOnPureStates) {
  std::mt19937_64 rng(27);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int i = 0; i < 3000; ++i) {
    PureState psi = testing::random_pure(rng);
    if (i % 3 == 1) {  // near GHZ, where the witness is active
      ComplexVector v = states::ghz().amplitudes() + 0.2 * testing::random_vector(rng, 8);
      psi = PureState::normalized(v);
    }
    const LocalUnitary u = i % 3 == 2 ? testing::random_unitary(rng) : LocalUnitary::identity();
    EXPECT_LE(tau3_lower_bound(pure(psi), u), tau3_pure(psi) + 1e-12);
  }
}

TEST(Tau3LowerBound, WitnessHoldsAtOptimizedRotation) {
  std::mt19937_64 rng(28);
  OptimizerConfig cfg;
  cfg.starts = 4;
  for (int i = 0; i < 30; ++i) {
    const PureState psi = PureState::normalized(states::ghz().amplitudes() + 0.4 * testing::random_vector(rng, 8));
    const auto opt = optimize_bound(pure(psi), BoundKind::Tau3, cfg, static_cast<std::uint64_t>(i));
    EXPECT_LE(opt.value, tau3_pure(psi) + 1e-12);
    EXPECT_NEAR(opt.value, tau3_lower_bound(pure(psi), opt.unitary), 1e-12);
  }
}

TEST(Bounds, ZeroBelowHalfFidelity) {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 300; ++i) {
    const DensityMatrix rho = testing::random_density(rng, 1 + i % 4);
    const LocalUnitary u = testing::random_unitary(rng);
    const ComplexMatrix rot = u.matrix() * rho.matrix() * u.matrix().adjoint();
    if (ghz_corner(rot).fidelity_aligned() < 0.5) {
      EXPECT_EQ(cgme_lower_bound(rho, u), 0.0);
      EXPECT_EQ(tau3_lower_bound(rho, u), 0.0);
    }
  }
}

TEST(Bounds, NonIncreasingUnderWhiteNoise) {
  std::mt19937_64 rng(30);
  OptimizerConfig cfg;
  cfg.starts = 4;
  for (int i = 0; i < 10; ++i) {
    const PureState psi = PureState::normalized(states::ghz().amplitudes() + 0.3 * testing::random_vector(rng, 8));
    const DensityMatrix rho = pure(psi);
    const auto ut = optimize_bound(rho, BoundKind::Tau3, cfg).unitary;
    const auto uc = optimize_bound(rho, BoundKind::Cgme, cfg).unitary;
    double prev_t = INFINITY, prev_c = INFINITY;
    for (int k = 0; k <= 20; ++k) {
      const DensityMatrix m = mix_with_noise(rho, 0.05 * k);
      const double t = tau3_lower_bound(m, ut), c = cgme_lower_bound(m, uc);
      EXPECT_LE(t, prev_t + 1e-15);
      EXPECT_LE(c, prev_c + 1e-15);
      prev_t = t;
      prev_c = c;
    }
  }
}

TEST(Classify, GhzNearOrigin) {
  const auto rep = classify(evolve(testing::plus3(), CouplingParams(2.0 / 3, 1.0 / 3), DephasingPoint(0.01, 3 * M_PI / 8)),
                            quick_options());
  EXPECT_EQ(rep.cls, EntanglementClass::GHZ);
  EXPECT_GT(rep.tau3_lb, 0.0);
  EXPECT_FALSE(rep.exact);
}

TEST(Classify, ThreeQuarterPiLineHasOnlyPairEntanglement) {
  // On this line qubit 1 factors out but qubits 2 and 3 stay entangled.
  const CouplingParams c(2.0 / 3, 1.0 / 3);
  for (double f : {0.0, 0.1, 1.0}) {
    const auto rep = classify(evolve(testing::plus3(), c, DephasingPoint(f, 3 * M_PI / 4)), quick_options());
    EXPECT_EQ(rep.tau3_lb, 0.0);
    EXPECT_EQ(rep.cgme_lb, 0.0);
    EXPECT_EQ(rep.negativity[0], 0.0);
    EXPECT_GT(rep.negativity[1], 0.0);
    EXPECT_EQ(rep.cls, EntanglementClass::BiseparableEntangled);
  }
}

TEST(Classify, ZeroLineAtNineQuarterPi) {
  const auto rep =
      classify(evolve(testing::plus3(), CouplingParams(2.0 / 3, 1.0 / 3), DephasingPoint(0.5, 9 * M_PI / 4)), quick_options());
  EXPECT_EQ(rep.cls, EntanglementClass::Undetected);
  for (double n : rep.negativity) EXPECT_EQ(n, 0.0);
}

TEST(Classify, MaximallyMixed) {
  const auto rep = classify(DensityMatrix::maximally_mixed(8));
  EXPECT_EQ(rep.cls, EntanglementClass::Undetected);
  EXPECT_EQ(rep.tau3_lb, 0.0);
  EXPECT_EQ(rep.cgme_lb, 0.0);
  EXPECT_NEAR(rep.ghz_fidelity_opt, 0.125, 1e-15);
}

TEST(Classify, PureStatesUseExactValues) {
  const auto g = classify(pure(states::ghz()), quick_options());
  EXPECT_TRUE(g.exact);
  EXPECT_NEAR(g.tau3_lb, 1.0, 1e-12);
  EXPECT_NEAR(g.cgme_lb, 1.0, 1e-12);
  EXPECT_EQ(g.cls, EntanglementClass::GHZ);
  const auto w = classify(pure(states::w()), quick_options());
  EXPECT_EQ(w.tau3_lb, 0.0);
  EXPECT_NEAR(w.cgme_lb, 2 * std::sqrt(2.0) / 3, 1e-12);
  EXPECT_EQ(w.cls, EntanglementClass::W);
  const auto b = classify(pure(states::superpose({"000", "011"})), quick_options());
  EXPECT_EQ(b.cls, EntanglementClass::BiseparableEntangled);
  EXPECT_EQ(b.cgme_cut, Bipartition::Cut1_23);
}

TEST(Classify, HierarchyAndRanges) {
  std::mt19937_64 rng(31);
  ClassifyOptions o = quick_options();
  for (int i = 0; i < 40; ++i) {
    DensityMatrix rho = testing::random_density(rng, 1 + i % 3);
    if (i % 2) rho = mix_with_noise(pure(PureState::normalized(states::ghz().amplitudes() + 0.3 * testing::random_vector(rng, 8))), 0.02 * i);
    o.stream = static_cast<std::uint64_t>(i);
    const auto rep = classify(rho, o);
    EXPECT_EQ(rep.cls, class_from_measures(rep.tau3_lb, rep.cgme_lb, rep.negativity));
    for (double v : {rep.tau3_lb, rep.cgme_lb, rep.ghz_fidelity_opt}) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
    for (double n : rep.negativity) {
      EXPECT_GE(n, 0.0);
      EXPECT_LE(n, 0.5);
    }
    if (rep.ghz_fidelity_opt < 0.5 && !rep.exact) {
      EXPECT_EQ(rep.tau3_lb, 0.0);
      EXPECT_EQ(rep.cgme_lb, 0.0);
    }
  }
}

TEST(Classify, PrecedenceOrder) {
  const std::array<double, 3> none{0, 0, 0}, some{0, 0.1, 0};
  EXPECT_EQ(class_from_measures(0.1, 0.2, some), EntanglementClass::GHZ);
  EXPECT_EQ(class_from_measures(0.0, 0.2, some), EntanglementClass::W);
  EXPECT_EQ(class_from_measures(0.0, 0.0, some), EntanglementClass::BiseparableEntangled);
  EXPECT_EQ(class_from_measures(0.0, 0.0, none), EntanglementClass::Undetected);
  for (auto c : {EntanglementClass::GHZ, EntanglementClass::W, EntanglementClass::BiseparableEntangled,
                 EntanglementClass::Undetected})
    EXPECT_EQ(class_from_string(to_string(c)), c);
}

}  // namespace
}  // namespace triqubath
