#pragma once

#include <cstdint>

#include "pseudoherm/linalg.hpp"

namespace pseudoherm {

/// A Hermitian involution P (P = P^dagger, P^2 = I), the "parity" of a
/// pseudo-Hermitian problem. Construction validates both properties to 1e-14.
class Involution {
 public:
  explicit Involution(ComplexMatrix matrix);

  /// diag(signs), each sign must be +1 or -1.
  static Involution diagonal(const std::vector<int>& signs);
  static Involution identity(Eigen::Index n);
  /// sigma_3 = diag(1, -1).
  static Involution sigma3();

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  Eigen::Index dim() const noexcept { return matrix_.rows(); }

 private:
  ComplexMatrix matrix_;
};

enum class ToySign { HermitianPlus, PtMinus };

/// Parameters of the 2x2 toy family [[a, b], [+-b, -a]].
struct ToyParams {
  double a = 0.0;
  double b = 0.0;
  ToySign sign = ToySign::PtMinus;
};

/// [[a, b], [b, -a]] for HermitianPlus, [[a, b], [-b, -a]] for PtMinus.
ComplexMatrix toy_hamiltonian(const ToyParams& p);

struct PseudoHermiticityCheck {
  bool holds = false;
  /// ||H - P H^dagger P|| / ||H|| (0 for the zero matrix).
  double residual = 0.0;
};

PseudoHermiticityCheck is_pseudo_hermitian(const ComplexMatrix& H, const Involution& P,
                                           double tol = kDefaultTol);

/// <x|P|y>, conjugate-linear in x.
Complex pseudo_inner(const Involution& P, const ComplexVector& x, const ComplexVector& y);

/// <x|P|x>; real up to roundoff, possibly negative or zero.
Complex pseudo_norm(const Involution& P, const ComplexVector& x);

/// H = B + P B^dagger P for a seeded random complex B with entries uniform on
/// [-1, 1) + i[-1, 1). Deterministic across platforms for a given seed.
ComplexMatrix random_pseudo_hermitian(Eigen::Index n, const Involution& P, std::uint64_t seed);

/// Seeded complex matrix with entries uniform on [-1, 1) + i[-1, 1).
ComplexMatrix random_complex_matrix(Eigen::Index n, std::uint64_t seed);

/// Seeded complex vector, same distribution as random_complex_matrix.
ComplexVector random_complex_vector(Eigen::Index n, std::uint64_t seed);

}  // namespace pseudoherm
