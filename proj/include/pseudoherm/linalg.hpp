#pragma once

// Dense complex linear algebra kernel sized for desk-scale problems (N <= ~256).
// Everything here is a pure function of its arguments.

#include <complex>
#include <limits>
#include <vector>

#include <Eigen/Dense>

namespace pseudoherm {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kDefaultTol = 1e-10;

/// Largest 1-norm accepted by expm. Accuracy is only characterized up to ~1e3;
/// past 1e8 the squaring phase alone amplifies roundoff beyond any useful bound.
inline constexpr double kExpmSafeNorm = 1e8;

/// Encoding of an infinite condition number.
inline constexpr double kInfiniteCondition = std::numeric_limits<double>::infinity();

/// Throws DimensionError unless M is square with dim >= 1, InvalidArgument if
/// any entry is NaN or Inf.
void require_valid(const ComplexMatrix& M, const char* what = "matrix");

bool is_finite(const ComplexMatrix& M);

ComplexMatrix adjoint(const ComplexMatrix& M);

/// Induced 1-norm (max column sum). Used for scaling decisions in expm.
double norm1(const ComplexMatrix& M);

/// Frobenius norm. All relative residuals in the library use this norm.
double norm(const ComplexMatrix& M);

/// Eigen-decomposition with right and left eigenvectors.
///
/// Column n of `right` is a unit-norm right eigenvector for eigenvalues[n].
/// Row n of `left` is the matching left eigenvector u_n (u_n M = lambda_n u_n),
/// rescaled so that left * right = I whenever the eigenbasis allows it.
struct EigenSystem {
  ComplexVector eigenvalues;
  ComplexMatrix right;
  ComplexMatrix left;
  /// max_n ||M v_n - lambda_n v_n|| / ||M||
  double residual = 0.0;
  /// ||left * right - I||, large when the basis is (nearly) defective.
  double biorthogonality_error = 0.0;
  /// cond(right), +inf if singular.
  double vector_condition = 1.0;
};

/// Eigenvalues ordered by nonincreasing real part; entries whose real parts
/// agree to `tol * scale` are ordered by nonincreasing imaginary part.
/// Throws ConvergenceFailure when the residual exceeds tol.
EigenSystem eig(const ComplexMatrix& M, double tol = kDefaultTol);

/// Eigenvalues only, same ordering as eig(). Never checks residuals.
ComplexVector eigenvalues(const ComplexMatrix& M, double tol = kDefaultTol);

/// Sorts a spectrum in the canonical order used by eig(). Returns the
/// permutation applied (result[i] = input[perm[i]]).
std::vector<Eigen::Index> canonical_order(const ComplexVector& values, double tol);

/// e^M by scaling and squaring with a degree-13 Pade approximant. Valid for
/// defective M. Throws OverflowRisk when norm1(M) > kExpmSafeNorm or the
/// result does not fit in double precision.
ComplexMatrix expm(const ComplexMatrix& M);

/// sigma_max / sigma_min, kInfiniteCondition if sigma_min is below the
/// machine floor relative to sigma_max.
double condition_number(const ComplexMatrix& M);

ComplexMatrix identity(Eigen::Index n);

}  // namespace pseudoherm
