#include <gtest/gtest.h>

#include <cmath>

#include <Eigen/Eigenvalues>

#include "oracles.hpp"
#include "pseudoherm/errors.hpp"
#include "pseudoherm/metric.hpp"
#include "pseudoherm/pt_algebra.hpp"
#include "pseudoherm/spectral_phase.hpp"

using namespace pseudoherm;

namespace {

ComplexMatrix toy(double a, double b) { return toy_hamiltonian({a, b, ToySign::PtMinus}); }

}  // namespace

TEST(BuildMetric, HermitianInputGivesIdentity) {
  const ComplexMatrix H = toy_hamiltonian({1.0, 0.7, ToySign::HermitianPlus});
  const auto m = build_metric(H);
  EXPECT_LE((m.eta - identity(2)).norm(), 1e-14);
  const ComplexMatrix B = random_complex_matrix(5, 4);
  EXPECT_LE((build_metric(B + B.adjoint()).eta - identity(5)).norm(), 1e-12);
}

TEST(BuildMetric, ToyPositiveMetricMatchesClosedForm) {
  const auto m = build_metric(toy(1.0, 0.5), {1, 1});
  EXPECT_GT(m.min_eigenvalue, 0.0);
  EXPECT_LE(m.intertwining_residual, 1e-10);
  EXPECT_LE((m.eta - oracle::toy_metric(1.0, 0.5, 1, 1)).norm(), 1e-13);
  EXPECT_LE((m.eta - m.eta.adjoint()).norm(), 1e-12);
}

TEST(BuildMetric, QuasiParitySignsGiveScaledSigma3) {
  // With signs (+1, -1) the metric collapses onto the parity itself:
  // eta = a / sqrt(a^2 - b^2) * sigma_3.
  for (double b : {0.0, 0.3, 0.5, 0.9}) {
    const auto m = build_metric(toy(1.0, b), {1, -1});
    const double scale = 1.0 / std::sqrt(1.0 - b * b);
    ComplexMatrix expected = ComplexMatrix::Zero(2, 2);
    expected(0, 0) = scale;
    expected(1, 1) = -scale;
    EXPECT_LE((m.eta - expected).norm(), 1e-13) << "b=" << b;
    EXPECT_LE((m.eta - oracle::toy_metric(1.0, b, 1, -1)).norm(), 1e-13);
    EXPECT_LT(m.min_eigenvalue, 0.0);
    EXPECT_LE(m.intertwining_residual, 1e-10);
  }
}

TEST(BuildMetric, ErrorPaths) {
  EXPECT_THROW(build_metric(toy(1.0, 2.0)), BrokenPhase);
  EXPECT_THROW(build_metric(toy(1.0, 1.0)), NearDefective);
  EXPECT_THROW(build_metric(toy(1.0, 0.5), {1}), InvalidArgument);
  EXPECT_THROW(build_metric(toy(1.0, 0.5), {1, 2}), InvalidArgument);
}

TEST(BuildMetric, VectorConditionCeilingFlagsOrRefuses) {
  MetricOptions strict;
  strict.vector_condition_ceiling = 10.0;
  EXPECT_THROW(build_metric(toy(1.0, 0.999), strict), NearDefective);
  MetricOptions lenient = strict;
  lenient.allow_near_defective = true;
  const auto m = build_metric(toy(1.0, 0.999), lenient);
  EXPECT_TRUE(m.near_defective);
  EXPECT_GT(m.vector_condition, 10.0);
}

TEST(BuildMetric, PositivityAcrossUnbrokenToys) {
  for (int i = 0; i < 100; ++i) {
    const double a = (i % 2 == 0 ? 1.0 : -1.0) * (0.2 + 0.05 * i);
    const double b = 0.99 * std::abs(a) * std::sin(0.37 * i);
    const auto m = build_metric(toy(a, b));
    EXPECT_GT(m.min_eigenvalue, 0.0) << "a=" << a << " b=" << b;
    EXPECT_LE(m.intertwining_residual, 1e-10);
  }
}

TEST(BuildMetric, SignFamilySpansIntertwinerSpace) {
  // The four sign vectors give metrics in the real span of the two rank-one
  // forms |phi_n><phi_n|; that span is the whole solution space.
  const ComplexMatrix H = toy(1.0, 0.6);
  std::vector<ComplexMatrix> metrics;
  for (int s0 : {1, -1}) {
    for (int s1 : {1, -1}) metrics.push_back(build_metric(H, {s0, s1}).eta);
  }
  Eigen::MatrixXd stacked(8, 4);
  for (int c = 0; c < 4; ++c) {
    for (int k = 0; k < 4; ++k) {
      stacked(k, c) = metrics[static_cast<std::size_t>(c)](k % 2, k / 2).real();
      stacked(4 + k, c) = metrics[static_cast<std::size_t>(c)](k % 2, k / 2).imag();
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked);
  int rank = 0;
  for (int k = 0; k < 4; ++k) rank += svd.singularValues()[k] > 1e-10 * svd.singularValues()[0];
  EXPECT_EQ(rank, 2);
  EXPECT_EQ(oracle::intertwiner_dimension(H), 2);
}

TEST(BuildMetric, PseudoNormSignIsQuasiParity) {
  const ComplexMatrix H = toy(1.0, 0.4);
  const auto es = eig(H);
  for (int s0 : {1, -1}) {
    for (int s1 : {1, -1}) {
      const auto m = build_metric(H, {s0, s1});
      for (int n = 0; n < 2; ++n) {
        const ComplexVector psi = es.right.col(n);
        const Complex form = psi.dot(m.eta * psi);
        EXPECT_NEAR(form.real(), n == 0 ? s0 : s1, 1e-12);
        EXPECT_NEAR(form.imag(), 0.0, 1e-12);
      }
    }
  }
}

TEST(BuildMetric, RandomUnbrokenPseudoHermitianMatrices) {
  // Block-diagonal toys with |b| < |a|: real spectrum, pseudo-Hermitian under
  // diag(1, -1, 1, -1).
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    ComplexMatrix H = ComplexMatrix::Zero(4, 4);
    const ComplexVector r = random_complex_vector(4, seed);
    H.topLeftCorner(2, 2) = toy(1.5 + 0.5 * r[0].real(), 0.5 * r[1].real());
    H.bottomRightCorner(2, 2) = toy(-2.0 + r[2].real(), 0.5 * r[3].real());
    const auto m = build_metric(H);
    EXPECT_GT(m.min_eigenvalue, 0.0);
    EXPECT_LE(m.intertwining_residual, 1e-10);
  }
}

TEST(SingularityProfile, Examples) {
  const auto rest = metric_singularity_profile(1.0, {0.0});
  EXPECT_NEAR(rest[0].cond, 1.0, 1e-14);

  const auto near = metric_singularity_profile(1.0, {0.9, 0.99, 0.999});
  EXPECT_LT(near[0].cond, near[1].cond);
  EXPECT_LT(near[1].cond, near[2].cond);
  EXPECT_GT(near[2].cond / near[0].cond, 10.0);
  // Closed form of the positive toy metric: cond = (a + b) / (a - b).
  for (const auto& e : near) {
    const auto eta = oracle::toy_metric(1.0, e.b, 1, 1);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> sa(eta);
    const double oracle_cond = sa.eigenvalues().maxCoeff() / sa.eigenvalues().minCoeff();
    EXPECT_NEAR(e.cond, oracle_cond, 1e-9 * oracle_cond);
    EXPECT_NEAR(e.cond, (1.0 + e.b) / (1.0 - e.b), 1e-9 * e.cond);
  }

  EXPECT_THROW(metric_singularity_profile(1.0, {1.0}), NearDefective);
  EXPECT_THROW(metric_singularity_profile(1.0, {1.5}), BrokenPhase);
}

TEST(SingularityProfile, MonotoneApproachToExceptionalPoint) {
  std::vector<double> bs;
  for (int i = 0; i <= 200; ++i) bs.push_back(0.5 + 0.499 * i / 200.0);
  const auto profile = metric_singularity_profile(1.0, bs);
  for (std::size_t i = 1; i < profile.size(); ++i) EXPECT_GT(profile[i].cond, profile[i - 1].cond);
}

TEST(VerifyHermitization, UnbrokenToy) {
  const ComplexMatrix H = toy(1.0, 0.5);
  const auto report = verify_hermitization(H, build_metric(H));
  EXPECT_LE(report.intertwining_residual, 1e-9);
  ASSERT_TRUE(report.hermiticity_residual.has_value());
  EXPECT_LE(*report.hermiticity_residual, 1e-9);
}

TEST(VerifyHermitization, IdentityMetricForHermitian) {
  const ComplexMatrix B = random_complex_matrix(4, 2);
  const ComplexMatrix H = B + B.adjoint();
  const auto report = verify_hermitization(H, identity(4));
  EXPECT_LE(report.intertwining_residual, 1e-15);
  EXPECT_LE(*report.hermiticity_residual, 1e-15);
}

TEST(VerifyHermitization, IndefiniteMetricRejectsSquareRoot) {
  const ComplexMatrix H = toy(1.0, 0.5);
  const auto m = build_metric(H, {1, -1});
  EXPECT_THROW(verify_hermitization(H, m), NotPositiveDefinite);
  const auto report = verify_hermitization(H, m, false);
  EXPECT_LE(report.intertwining_residual, 1e-10);
  EXPECT_FALSE(report.hermiticity_residual.has_value());
}

TEST(VerifyHermitization, BrokenPhaseHasNoPositiveMetric) {
  // Infimum over positive semidefinite forms is 1/sqrt(5) (Nelder-Mead over
  // eta = L L^dagger); the grid search can only land above it.
  const ComplexMatrix H = toy(1.0, 2.0);
  const double infimum = 1.0 / std::sqrt(5.0);
  const double grid_min = oracle::min_positive_intertwining_residual(H);
  EXPECT_GE(grid_min, infimum - 1e-12);
  EXPECT_LT(grid_min, infimum + 0.05);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const ComplexMatrix L = random_complex_matrix(2, seed);
    const ComplexMatrix eta = L * L.adjoint() + 1e-3 * identity(2);
    EXPECT_GE(verify_hermitization(H, eta).intertwining_residual, infimum - 1e-12);
  }
}
