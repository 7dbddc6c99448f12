#include "pseudoherm/linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>
#include <tuple>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "pseudoherm/errors.hpp"

namespace pseudoherm {

void require_valid(const ComplexMatrix& M, const char* what) {
  if (M.rows() < 1 || M.rows() != M.cols()) {
    throw DimensionError(std::string(what) + " must be square with dim >= 1, got " +
                         std::to_string(M.rows()) + "x" + std::to_string(M.cols()));
  }
  if (!is_finite(M)) {
    throw InvalidArgument(std::string(what) + " has non-finite entries");
  }
}

bool is_finite(const ComplexMatrix& M) {
  return M.array().real().isFinite().all() && M.array().imag().isFinite().all();
}

ComplexMatrix adjoint(const ComplexMatrix& M) { return M.adjoint(); }

double norm1(const ComplexMatrix& M) {
  if (M.size() == 0) return 0.0;
  return M.cwiseAbs().colwise().sum().maxCoeff();
}

double norm(const ComplexMatrix& M) { return M.norm(); }

ComplexMatrix identity(Eigen::Index n) { return ComplexMatrix::Identity(n, n); }

std::vector<Eigen::Index> canonical_order(const ComplexVector& values, double tol) {
  const Eigen::Index n = values.size();
  std::vector<Eigen::Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Eigen::Index{0});
  if (n == 0) return perm;

  double scale = values.cwiseAbs().maxCoeff();
  if (scale == 0.0) scale = 1.0;
  const double tie = tol * scale;

  std::stable_sort(perm.begin(), perm.end(), [&](Eigen::Index i, Eigen::Index j) {
    return values[i].real() > values[j].real();
  });
  // Real parts equal within `tie` form a group ordered by imaginary part.
  std::size_t start = 0;
  while (start < perm.size()) {
    std::size_t end = start + 1;
    const double anchor = values[perm[start]].real();
    while (end < perm.size() && anchor - values[perm[end]].real() <= tie) ++end;
    std::stable_sort(perm.begin() + static_cast<std::ptrdiff_t>(start),
                     perm.begin() + static_cast<std::ptrdiff_t>(end),
                     [&](Eigen::Index i, Eigen::Index j) {
                       return values[i].imag() > values[j].imag();
                     });
    start = end;
  }
  return perm;
}

namespace {

// Pairs each eigenvalue of M with an eigenvalue of M^dagger whose conjugate is
// closest, globally greedy on distance so near-degenerate clusters stay intact.
std::vector<Eigen::Index> match_adjoint_spectrum(const ComplexVector& lambda,
                                                 const ComplexVector& mu) {
  const Eigen::Index n = lambda.size();
  std::vector<std::tuple<double, Eigen::Index, Eigen::Index>> candidates;
  candidates.reserve(static_cast<std::size_t>(n * n));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      candidates.emplace_back(std::abs(lambda[i] - std::conj(mu[j])), i, j);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  std::vector<Eigen::Index> match(static_cast<std::size_t>(n), -1);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  Eigen::Index assigned = 0;
  for (const auto& [d, i, j] : candidates) {
    if (match[static_cast<std::size_t>(i)] >= 0 || used[static_cast<std::size_t>(j)]) continue;
    match[static_cast<std::size_t>(i)] = j;
    used[static_cast<std::size_t>(j)] = true;
    if (++assigned == n) break;
  }
  return match;
}

// Groups indices whose eigenvalues lie within `radius` of each other
// (transitive closure). Returns a cluster id per index.
std::vector<Eigen::Index> cluster_spectrum(const ComplexVector& lambda, double radius) {
  const Eigen::Index n = lambda.size();
  std::vector<Eigen::Index> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), Eigen::Index{0});
  auto find = [&](Eigen::Index x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      x = parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    }
    return x;
  };
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (std::abs(lambda[i] - lambda[j]) <= radius) {
        parent[static_cast<std::size_t>(find(i))] = find(j);
      }
    }
  }
  std::vector<Eigen::Index> id(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) id[static_cast<std::size_t>(i)] = find(i);
  return id;
}

}  // namespace

EigenSystem eig(const ComplexMatrix& M, double tol) {
  require_valid(M);
  if (!(tol > 0.0)) throw InvalidArgument("eig: tol must be positive");
  const Eigen::Index n = M.rows();
  const double scale = norm(M);

  EigenSystem out;
  if (scale == 0.0) {
    out.eigenvalues = ComplexVector::Zero(n);
    out.right = identity(n);
    out.left = identity(n);
    return out;
  }

  Eigen::ComplexEigenSolver<ComplexMatrix> solver(M, true);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("eig: QR iteration did not converge");
  }
  const auto perm = canonical_order(solver.eigenvalues(), tol);
  out.eigenvalues.resize(n);
  out.right.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.eigenvalues[i] = solver.eigenvalues()[perm[static_cast<std::size_t>(i)]];
    out.right.col(i) = solver.eigenvectors().col(perm[static_cast<std::size_t>(i)]).normalized();
  }

  for (Eigen::Index i = 0; i < n; ++i) {
    const double r = (M * out.right.col(i) - out.eigenvalues[i] * out.right.col(i)).norm() / scale;
    out.residual = std::max(out.residual, r);
  }
  if (!(out.residual <= tol)) {
    throw ConvergenceFailure("eig: residual " + std::to_string(out.residual) +
                             " exceeds tolerance " + std::to_string(tol));
  }

  // Left vectors: right eigenvectors of the adjoint, conjugate-transposed into rows.
  Eigen::ComplexEigenSolver<ComplexMatrix> adj_solver(M.adjoint(), true);
  if (adj_solver.info() != Eigen::Success) {
    throw ConvergenceFailure("eig: QR iteration on the adjoint did not converge");
  }
  const auto match = match_adjoint_spectrum(out.eigenvalues, adj_solver.eigenvalues());
  out.left.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.left.row(i) =
        adj_solver.eigenvectors().col(match[static_cast<std::size_t>(i)]).normalized().adjoint();
  }

  // Biorthonormalize cluster by cluster: L_c <- (L_c V_c)^{-1} L_c.
  const auto cluster = cluster_spectrum(out.eigenvalues, 1e-6 * scale);
  std::vector<bool> done(static_cast<std::size_t>(n), false);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (done[static_cast<std::size_t>(i)]) continue;
    std::vector<Eigen::Index> members;
    for (Eigen::Index j = i; j < n; ++j) {
      if (cluster[static_cast<std::size_t>(j)] == cluster[static_cast<std::size_t>(i)]) {
        members.push_back(j);
        done[static_cast<std::size_t>(j)] = true;
      }
    }
    const auto k = static_cast<Eigen::Index>(members.size());
    ComplexMatrix Lc(k, n);
    ComplexMatrix Vc(n, k);
    for (Eigen::Index a = 0; a < k; ++a) {
      Lc.row(a) = out.left.row(members[static_cast<std::size_t>(a)]);
      Vc.col(a) = out.right.col(members[static_cast<std::size_t>(a)]);
    }
    Eigen::FullPivLU<ComplexMatrix> lu(Lc * Vc);
    if (!lu.isInvertible()) continue;
    const ComplexMatrix fixed = lu.solve(Lc);
    for (Eigen::Index a = 0; a < k; ++a) {
      out.left.row(members[static_cast<std::size_t>(a)]) = fixed.row(a);
    }
  }

  out.biorthogonality_error = (out.left * out.right - identity(n)).norm();
  out.vector_condition = condition_number(out.right);
  return out;
}

ComplexVector eigenvalues(const ComplexMatrix& M, double tol) {
  require_valid(M);
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(M, false);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("eigenvalues: QR iteration did not converge");
  }
  const auto perm = canonical_order(solver.eigenvalues(), tol);
  ComplexVector out(M.rows());
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    out[i] = solver.eigenvalues()[perm[static_cast<std::size_t>(i)]];
  }
  return out;
}

namespace {

// Higham, "The scaling and squaring method for the matrix exponential
// revisited" (2005): theta_m bounds and Pade numerator coefficients.
constexpr std::array<double, 4> kPade3 = {120.0, 60.0, 12.0, 1.0};
constexpr std::array<double, 6> kPade5 = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
constexpr std::array<double, 8> kPade7 = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                                          25200.0,    1512.0,    56.0,      1.0};
constexpr std::array<double, 10> kPade9 = {17643225600.0, 8821612800.0, 2075673600.0,
                                           302702400.0,   30270240.0,   2162160.0,
                                           110880.0,      3960.0,       90.0,
                                           1.0};
constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};

constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068e0;
constexpr double kTheta13 = 5.371920351148152e0;

template <std::size_t K>
ComplexMatrix pade_low(const ComplexMatrix& A, const std::array<double, K>& b) {
  const Eigen::Index n = A.rows();
  const ComplexMatrix A2 = A * A;
  ComplexMatrix power = identity(n);
  ComplexMatrix U_inner = ComplexMatrix::Zero(n, n);
  ComplexMatrix V = ComplexMatrix::Zero(n, n);
  for (std::size_t j = 0; j + 1 < K; j += 2) {
    V += b[j] * power;
    U_inner += b[j + 1] * power;
    power = power * A2;
  }
  const ComplexMatrix U = A * U_inner;
  return (V - U).partialPivLu().solve(V + U);
}

ComplexMatrix pade13(const ComplexMatrix& A) {
  const auto& b = kPade13;
  const Eigen::Index n = A.rows();
  const ComplexMatrix I = identity(n);
  const ComplexMatrix A2 = A * A;
  const ComplexMatrix A4 = A2 * A2;
  const ComplexMatrix A6 = A4 * A2;
  const ComplexMatrix U =
      A * (A6 * (b[13] * A6 + b[11] * A4 + b[9] * A2) + b[7] * A6 + b[5] * A4 + b[3] * A2 +
           b[1] * I);
  const ComplexMatrix V =
      A6 * (b[12] * A6 + b[10] * A4 + b[8] * A2) + b[6] * A6 + b[4] * A4 + b[2] * A2 + b[0] * I;
  return (V - U).partialPivLu().solve(V + U);
}

}  // namespace

ComplexMatrix expm(const ComplexMatrix& M) {
  require_valid(M);
  const double n1 = norm1(M);
  if (n1 > kExpmSafeNorm) {
    throw OverflowRisk("expm: 1-norm " + std::to_string(n1) + " exceeds safe range " +
                       std::to_string(kExpmSafeNorm));
  }
  if (n1 <= kTheta3) return pade_low(M, kPade3);
  if (n1 <= kTheta5) return pade_low(M, kPade5);
  if (n1 <= kTheta7) return pade_low(M, kPade7);
  if (n1 <= kTheta9) return pade_low(M, kPade9);

  int squarings = 0;
  if (n1 > kTheta13) squarings = static_cast<int>(std::ceil(std::log2(n1 / kTheta13)));
  ComplexMatrix R = pade13(M / std::ldexp(1.0, squarings));
  for (int i = 0; i < squarings; ++i) R = R * R;
  if (!is_finite(R)) throw OverflowRisk("expm: result overflows double precision");
  return R;
}

double condition_number(const ComplexMatrix& M) {
  require_valid(M);
  Eigen::JacobiSVD<ComplexMatrix> svd(M);
  const auto& s = svd.singularValues();
  const double smax = s[0];
  const double smin = s[s.size() - 1];
  const double floor =
      smax * static_cast<double>(M.rows()) * std::numeric_limits<double>::epsilon();
  if (smax == 0.0 || smin <= floor) return kInfiniteCondition;
  return smax / smin;
}

}  // namespace pseudoherm
