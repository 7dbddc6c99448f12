#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "pseudoherm/errors.hpp"
#include "pseudoherm/spectral_phase.hpp"

using namespace pseudoherm;

TEST(ToyEnergies, ClosedFormExamples) {
  auto [m, p] = toy_energies({1.0, 0.5, ToySign::PtMinus});
  EXPECT_DOUBLE_EQ(p.real(), std::sqrt(0.75));
  EXPECT_DOUBLE_EQ(m.real(), -std::sqrt(0.75));
  EXPECT_EQ(p.imag(), 0.0);

  std::tie(m, p) = toy_energies({1.0, 1.0, ToySign::PtMinus});
  EXPECT_EQ(m, Complex(0.0));
  EXPECT_EQ(p, Complex(0.0));

  std::tie(m, p) = toy_energies({3.0, 4.0, ToySign::HermitianPlus});
  EXPECT_DOUBLE_EQ(p.real(), 5.0);
  EXPECT_DOUBLE_EQ(m.real(), -5.0);
}

TEST(ToyEnergies, BrokenBranchPutsSecondRootInUpperHalfPlane) {
  const auto [n1, n2] = toy_energies({1.0, 2.0, ToySign::PtMinus});
  EXPECT_DOUBLE_EQ(n2.imag(), std::sqrt(3.0));
  EXPECT_EQ(n1, std::conj(n2));
}

TEST(ToyEnergies, MatchesNumericalSpectrumAwayFromExceptionalPoint) {
  for (int i = 0; i < 60; ++i) {
    for (int j = 0; j < 60; ++j) {
      const double a = -3.0 + 0.1 * i + 0.013;
      const double b = -3.0 + 0.1 * j;
      for (auto sign : {ToySign::PtMinus, ToySign::HermitianPlus}) {
        const ToyParams p{a, b, sign};
        const auto [lo, hi] = toy_energies(p);
        const auto es = eig(toy_hamiltonian(p));
        EXPECT_LE(std::abs(es.eigenvalues[0] - hi), 1e-12 * std::abs(hi));
        EXPECT_LE(std::abs(es.eigenvalues[1] - lo), 1e-12 * std::abs(lo));
      }
    }
  }
}

TEST(Classify, ThreeRegimesOfTheToyModel) {
  const auto unbroken = classify(toy_hamiltonian({1.0, 0.5, ToySign::PtMinus}));
  EXPECT_EQ(unbroken.phase, Phase::AllReal);
  EXPECT_NEAR(unbroken.eigenvalues[0].real(), 0.8660254037844386, 1e-14);
  EXPECT_TRUE(unbroken.pairing.empty());
  EXPECT_TRUE(unbroken.defect.empty());

  const auto broken = classify(toy_hamiltonian({1.0, 2.0, ToySign::PtMinus}));
  EXPECT_EQ(broken.phase, Phase::ConjugatePairs);
  ASSERT_EQ(broken.pairing.size(), 1u);
  EXPECT_EQ(broken.pairing[0], std::make_pair(0, 1));
  EXPECT_NEAR(broken.eigenvalues[0].imag(), 1.7320508075688772, 1e-14);
  EXPECT_TRUE(broken.unpaired.empty());

  const auto ep = classify(toy_hamiltonian({1.0, 1.0, ToySign::PtMinus}));
  EXPECT_EQ(ep.phase, Phase::Exceptional);
  ASSERT_EQ(ep.defect.size(), 1u);
  EXPECT_EQ(ep.defect[0].algebraic, 2);
  EXPECT_EQ(ep.defect[0].geometric, 1);
  EXPECT_LE(std::abs(ep.defect[0].eigenvalue), 1e-7);
  EXPECT_LT(ep.min_vector_angle, 1e-6);
}

TEST(Classify, JordanBlocksAtManyScales) {
  for (double a : {1e-3, 0.3, 1.0, 2.5, -4.0, 1e3}) {
    const ComplexMatrix H = toy_hamiltonian({a, a, ToySign::PtMinus});
    EXPECT_EQ((H * H).norm(), 0.0);
    EXPECT_EQ(classify(H).phase, Phase::Exceptional) << "a=" << a;
    // Shifted Jordan block: defect survives a real shift.
    const ComplexMatrix shifted = H + 0.7 * identity(2);
    const auto report = classify(shifted);
    EXPECT_EQ(report.phase, Phase::Exceptional) << "a=" << a;
  }
}

TEST(Classify, HermitianAndDegenerateButDiagonalizable) {
  const ComplexMatrix B = random_complex_matrix(6, 11);
  EXPECT_EQ(classify(B + B.adjoint()).phase, Phase::AllReal);
  // identity is degenerate but not defective
  EXPECT_EQ(classify(identity(4)).phase, Phase::AllReal);
  EXPECT_EQ(classify(ComplexMatrix::Zero(3, 3)).phase, Phase::AllReal);
}

TEST(Classify, MixedSpectrumPairsOnlyNonRealEigenvalues) {
  ComplexMatrix H = ComplexMatrix::Zero(4, 4);
  H.topLeftCorner(2, 2) = toy_hamiltonian({1.0, 2.0, ToySign::PtMinus});
  H.bottomRightCorner(2, 2) = toy_hamiltonian({3.0, 1.0, ToySign::PtMinus});
  const auto report = classify(H);
  EXPECT_EQ(report.phase, Phase::ConjugatePairs);
  ASSERT_EQ(report.pairing.size(), 1u);
  const auto [i, j] = report.pairing[0];
  EXPECT_NEAR(std::abs(report.eigenvalues[i] - std::conj(report.eigenvalues[j])), 0.0, 1e-13);
}

TEST(Classify, UnpairedComplexEigenvaluesAreReported) {
  ComplexMatrix H = ComplexMatrix::Zero(2, 2);
  H(0, 0) = Complex(1.0, 1.0);
  H(1, 1) = Complex(-1.0, 0.5);
  const auto report = classify(H);
  EXPECT_EQ(report.phase, Phase::ConjugatePairs);
  EXPECT_TRUE(report.pairing.empty());
  EXPECT_EQ(report.unpaired.size(), 2u);
}

TEST(Classify, RandomPseudoHermitianSpectraPairUp) {
  for (Eigen::Index n : {2, 4, 8}) {
    std::vector<int> signs(static_cast<std::size_t>(n), 1);
    for (Eigen::Index i = 1; i < n; i += 2) signs[static_cast<std::size_t>(i)] = -1;
    const Involution P = Involution::diagonal(signs);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      ClassifyTolerances tols;
      tols.pair = 1e-10;
      const auto report = classify(random_pseudo_hermitian(n, P, seed), tols);
      EXPECT_TRUE(report.unpaired.empty()) << "n=" << n << " seed=" << seed;
    }
  }
}

TEST(Classify, RejectsNonPositiveTolerances) {
  ClassifyTolerances tols;
  tols.defect = 0.0;
  EXPECT_THROW(classify(identity(2), tols), InvalidArgument);
}

TEST(Sweep, PhaseSequenceAtUnitA) {
  const auto result = sweep(1.0, {0.0, 0.5, 1.0, 1.5, 2.0});
  const std::vector<Phase> expected = {Phase::AllReal, Phase::AllReal, Phase::Exceptional,
                                       Phase::ConjugatePairs, Phase::ConjugatePairs};
  ASSERT_EQ(result.points.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    EXPECT_EQ(result.points[i].phase, expected[i]) << "b=" << result.points[i].b;
  }
  EXPECT_DOUBLE_EQ(result.points[3].gap, 1.0 - 2.25);
  ASSERT_EQ(result.transitions.size(), 2u);
  EXPECT_EQ(result.transitions[0].lower, 1u);
  EXPECT_EQ(result.transitions[1].upper, 3u);
}

TEST(Sweep, ZeroDiagonalIsBrokenEverywhere) {
  const auto result = sweep(0.0, {0.1, 0.5, 1.0, 7.0});
  for (const auto& p : result.points) EXPECT_EQ(p.phase, Phase::ConjugatePairs);
  EXPECT_TRUE(result.transitions.empty());
}

TEST(Sweep, SinglePointAndValidation) {
  const auto result = sweep(1.0, {0.0});
  ASSERT_EQ(result.points.size(), 1u);
  EXPECT_EQ(result.points[0].phase, Phase::AllReal);
  EXPECT_THROW(sweep(1.0, {}), InvalidArgument);
  EXPECT_THROW(sweep(1.0, {0.0, 1.0, 1.0}), InvalidArgument);
  EXPECT_NO_THROW(sweep(1.0, {2.0, 1.0, 0.0}));
}

TEST(Sweep, MonotoneOrderingWithOneTransitionZone) {
  for (double a : {0.5, 1.0, 2.0}) {
    std::vector<double> grid;
    for (int i = 0; i <= 400; ++i) grid.push_back(3.0 * a * i / 400.0);
    const auto result = sweep(a, grid);
    int rank_prev = 0;
    for (const auto& p : result.points) {
      const int rank = p.phase == Phase::AllReal ? 0 : p.phase == Phase::Exceptional ? 1 : 2;
      EXPECT_GE(rank, rank_prev);
      rank_prev = rank;
      // Sign of the gap agrees with the phase.
      if (p.phase == Phase::AllReal) EXPECT_GT(p.gap, 0.0);
      if (p.phase == Phase::ConjugatePairs) EXPECT_LT(p.gap, 0.0);
    }
    EXPECT_LE(result.transitions.size(), 2u);
  }
}

TEST(LocateExceptional, ConvergesToAbsA) {
  EXPECT_NEAR(locate_exceptional(1.0, 0.5, 2.0, 1e-10), 1.0, 1e-10);
  EXPECT_NEAR(locate_exceptional(2.5, 0.0, 10.0, 1e-10), 2.5, 1e-10);
  EXPECT_NEAR(locate_exceptional(-1.5, 3.0, 0.2, 1e-12), 1.5, 1e-12);
}

TEST(LocateExceptional, NoBracket) {
  EXPECT_THROW(locate_exceptional(1.0, 0.1, 0.2), NoBracket);
  EXPECT_THROW(locate_exceptional(1.0, 1.0, 2.0), NoBracket);  // Exceptional end
  EXPECT_THROW(locate_exceptional(1.0, 0.5, 2.0, 0.0), InvalidArgument);
}
