#include <gtest/gtest.h>

#include <cmath>

#include "pseudoherm/errors.hpp"
#include "pseudoherm/pt_algebra.hpp"

using namespace pseudoherm;

namespace {

ComplexVector vec2(Complex x, Complex y) {
  ComplexVector v(2);
  v << x, y;
  return v;
}

// Random involution Q D Q^dagger with Q unitary and D = diag(+-1).
Involution rotated_involution(Eigen::Index n, std::uint64_t seed) {
  const ComplexMatrix Q = random_complex_matrix(n, seed).householderQr().householderQ();
  ComplexMatrix D = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) D(i, i) = (i % 2 == 0) ? 1.0 : -1.0;
  ComplexMatrix P = Q * D * Q.adjoint();
  P = 0.5 * (P + P.adjoint());
  return Involution(P);
}

}  // namespace

TEST(ToyHamiltonian, Constructors) {
  ComplexMatrix expected(2, 2);
  expected << 1.0, 0.0, 0.0, -1.0;
  EXPECT_EQ(toy_hamiltonian({1.0, 0.0, ToySign::PtMinus}), expected);
  expected << 1.0, 0.5, -0.5, -1.0;
  EXPECT_EQ(toy_hamiltonian({1.0, 0.5, ToySign::PtMinus}), expected);
  expected << 1.0, 2.0, 2.0, -1.0;
  EXPECT_EQ(toy_hamiltonian({1.0, 2.0, ToySign::HermitianPlus}), expected);
  EXPECT_THROW(toy_hamiltonian({std::nan(""), 1.0, ToySign::PtMinus}), InvalidArgument);
}

TEST(ToyHamiltonian, PtVariantIsSigma3PseudoHermitian) {
  for (int i = 0; i < 200; ++i) {
    const double a = -5.0 + 0.05 * i;
    const double b = 3.0 - 0.037 * i;
    const auto check = is_pseudo_hermitian(toy_hamiltonian({a, b, ToySign::PtMinus}),
                                           Involution::sigma3(), 1e-14);
    EXPECT_TRUE(check.holds);
    EXPECT_LE(check.residual, 1e-14);
    const ComplexMatrix Hp = toy_hamiltonian({a, b, ToySign::HermitianPlus});
    EXPECT_EQ(Hp, Hp.adjoint());
  }
}

TEST(PseudoHermiticity, Examples) {
  const ComplexMatrix H = toy_hamiltonian({1.0, 0.5, ToySign::PtMinus});
  EXPECT_TRUE(is_pseudo_hermitian(H, Involution::sigma3()).holds);
  EXPECT_FALSE(is_pseudo_hermitian(H, Involution::identity(2)).holds);
  const ComplexMatrix B = random_complex_matrix(4, 3);
  EXPECT_TRUE(is_pseudo_hermitian(B + B.adjoint(), Involution::identity(4)).holds);
  EXPECT_THROW(is_pseudo_hermitian(B, Involution::sigma3()), DimensionMismatch);
}

TEST(Involution, ValidatesConstruction) {
  ComplexMatrix not_herm(2, 2);
  not_herm << 0.0, 1.0, 0.0, 0.0;
  EXPECT_THROW(Involution{not_herm}, InvalidArgument);
  ComplexMatrix not_invol(2, 2);
  not_invol << 2.0, 0.0, 0.0, 1.0;
  EXPECT_THROW(Involution{not_invol}, InvalidArgument);
  EXPECT_THROW(Involution::diagonal({1, 0}), InvalidArgument);
  EXPECT_NO_THROW(rotated_involution(6, 1));
}

TEST(PseudoInner, Examples) {
  const ComplexVector e0 = vec2(1.0, 0.0);
  EXPECT_EQ(pseudo_inner(Involution::identity(2), e0, e0), Complex(1.0));
  const ComplexVector e1 = vec2(0.0, 1.0);
  EXPECT_EQ(pseudo_inner(Involution::sigma3(), e1, e1), Complex(-1.0));
  const ComplexVector null = vec2(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));
  EXPECT_NEAR(std::abs(pseudo_inner(Involution::sigma3(), null, null)), 0.0, 1e-16);
  EXPECT_THROW(pseudo_inner(Involution::sigma3(), e0, ComplexVector::Zero(3)), DimensionMismatch);
}

TEST(PseudoInner, ConjugateSymmetryAndRealNorm) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(seed % 7);
    const Involution P = rotated_involution(n, seed);
    const ComplexVector x = random_complex_vector(n, 2 * seed);
    const ComplexVector y = random_complex_vector(n, 2 * seed + 1);
    EXPECT_LE(std::abs(pseudo_inner(P, x, y) - std::conj(pseudo_inner(P, y, x))), 1e-14 * n);
    const Complex pn = pseudo_norm(P, x);
    EXPECT_LE(std::abs(pn.imag()), 1e-14 * x.squaredNorm());
  }
}

TEST(RandomPseudoHermitian, Properties) {
  for (Eigen::Index n : {2, 4, 8}) {
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
      std::vector<int> signs(static_cast<std::size_t>(n));
      for (Eigen::Index i = 0; i < n; ++i) signs[static_cast<std::size_t>(i)] = ((seed >> i) & 1) ? -1 : 1;
      const Involution P = seed % 3 == 0 ? rotated_involution(n, seed) : Involution::diagonal(signs);
      const ComplexMatrix H = random_pseudo_hermitian(n, P, seed);
      const auto check = is_pseudo_hermitian(H, P, 1e-12);
      ASSERT_TRUE(check.holds) << "n=" << n << " seed=" << seed << " residual=" << check.residual;
    }
  }
}

TEST(RandomPseudoHermitian, DeterministicAndHermitianForIdentity) {
  const Involution P = Involution::sigma3();
  EXPECT_EQ(random_pseudo_hermitian(2, P, 42), random_pseudo_hermitian(2, P, 42));
  EXPECT_NE(random_pseudo_hermitian(2, P, 42), random_pseudo_hermitian(2, P, 43));
  EXPECT_TRUE(is_pseudo_hermitian(random_pseudo_hermitian(2, P, 42), P).holds);
  const ComplexMatrix H = random_pseudo_hermitian(5, Involution::identity(5), 9);
  EXPECT_EQ(H, H.adjoint());
  EXPECT_THROW(random_pseudo_hermitian(3, P, 1), DimensionMismatch);
}

TEST(RandomSource, UniformRange) {
  const ComplexMatrix B = random_complex_matrix(30, 5);
  EXPECT_LT(B.real().maxCoeff(), 1.0);
  EXPECT_GE(B.real().minCoeff(), -1.0);
  EXPECT_LT(B.imag().maxCoeff(), 1.0);
  EXPECT_GE(B.imag().minCoeff(), -1.0);
  EXPECT_NEAR(B.real().mean(), 0.0, 0.1);
}
