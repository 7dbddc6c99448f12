#include "pseudoherm/pt_algebra.hpp"

#include <cmath>
#include <random>
#include <string>

#include "pseudoherm/errors.hpp"

namespace pseudoherm {

namespace {

constexpr double kInvolutionTol = 1e-14;

// Uniform on [-1, 1) from the top 53 bits; avoids the implementation-defined
// std:: distributions so seeds reproduce across standard libraries.
class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed) : engine_(seed) {}
  double next() { return std::ldexp(static_cast<double>(engine_() >> 11), -52) - 1.0; }
  Complex next_complex() {
    const double re = next();
    return {re, next()};
  }

 private:
  std::mt19937_64 engine_;
};

void require_dims(const Involution& P, Eigen::Index n, const char* op) {
  if (P.dim() != n) {
    throw DimensionMismatch(std::string(op) + ": involution has dim " + std::to_string(P.dim()) +
                            ", operand has dim " + std::to_string(n));
  }
}

}  // namespace

Involution::Involution(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
  require_valid(matrix_, "involution");
  const Eigen::Index n = matrix_.rows();
  const double herm = (matrix_ - matrix_.adjoint()).norm();
  const double invol = (matrix_ * matrix_ - pseudoherm::identity(n)).norm();
  if (herm > kInvolutionTol * std::max(1.0, matrix_.norm())) {
    throw InvalidArgument("involution is not Hermitian (residual " + std::to_string(herm) + ")");
  }
  if (invol > kInvolutionTol * static_cast<double>(n)) {
    throw InvalidArgument("involution does not square to identity (residual " +
                          std::to_string(invol) + ")");
  }
}

Involution Involution::diagonal(const std::vector<int>& signs) {
  if (signs.empty()) throw InvalidArgument("involution needs at least one sign");
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(signs.size()),
                                        static_cast<Eigen::Index>(signs.size()));
  for (std::size_t i = 0; i < signs.size(); ++i) {
    if (signs[i] != 1 && signs[i] != -1) {
      throw InvalidArgument("involution signs must be +1 or -1");
    }
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = static_cast<double>(signs[i]);
  }
  return Involution(std::move(m));
}

Involution Involution::identity(Eigen::Index n) { return Involution(pseudoherm::identity(n)); }

Involution Involution::sigma3() { return diagonal({1, -1}); }

ComplexMatrix toy_hamiltonian(const ToyParams& p) {
  if (!std::isfinite(p.a) || !std::isfinite(p.b)) {
    throw InvalidArgument("toy parameters must be finite");
  }
  ComplexMatrix H(2, 2);
  const double lower = p.sign == ToySign::HermitianPlus ? p.b : -p.b;
  H << p.a, p.b, lower, -p.a;
  return H;
}

PseudoHermiticityCheck is_pseudo_hermitian(const ComplexMatrix& H, const Involution& P,
                                           double tol) {
  require_valid(H);
  require_dims(P, H.rows(), "is_pseudo_hermitian");
  const ComplexMatrix& p = P.matrix();
  const double diff = (H - p * H.adjoint() * p).norm();
  const double scale = H.norm();
  PseudoHermiticityCheck out;
  out.residual = scale > 0.0 ? diff / scale : 0.0;
  out.holds = out.residual <= tol;
  return out;
}

Complex pseudo_inner(const Involution& P, const ComplexVector& x, const ComplexVector& y) {
  if (x.size() != y.size()) {
    throw DimensionMismatch("pseudo_inner: vectors have different lengths");
  }
  require_dims(P, x.size(), "pseudo_inner");
  return x.dot(P.matrix() * y);
}

Complex pseudo_norm(const Involution& P, const ComplexVector& x) { return pseudo_inner(P, x, x); }

ComplexMatrix random_complex_matrix(Eigen::Index n, std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("random matrix dimension must be >= 1");
  UniformSource src(seed);
  ComplexMatrix B(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) B(i, j) = src.next_complex();
  }
  return B;
}

ComplexVector random_complex_vector(Eigen::Index n, std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("random vector length must be >= 1");
  UniformSource src(seed);
  ComplexVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = src.next_complex();
  return v;
}

ComplexMatrix random_pseudo_hermitian(Eigen::Index n, const Involution& P, std::uint64_t seed) {
  require_dims(P, n, "random_pseudo_hermitian");
  const ComplexMatrix B = random_complex_matrix(n, seed);
  const ComplexMatrix& p = P.matrix();
  return B + p * B.adjoint() * p;
}

}  // namespace pseudoherm
