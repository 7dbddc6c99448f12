#pragma once

#include <optional>
#include <vector>

#include "pseudoherm/linalg.hpp"

namespace pseudoherm {

/// A Hermitian form eta with eta H = H^dagger eta.
///
/// eta = sum_n s_n |phi_n><phi_n| where phi_n are left eigenvectors of H
/// biorthonormal to unit-norm right eigenvectors, and s_n are the
/// quasi-parity signs. With all signs +1 the form is positive definite and
/// defines the inner product in which H is Hermitian.
struct MetricOperator {
  ComplexMatrix eta;
  std::vector<int> signs;
  /// ||eta H - H^dagger eta|| / (||eta|| ||H||)
  double intertwining_residual = 0.0;
  double min_eigenvalue = 0.0;
  double cond = 1.0;
  /// Condition number of H's right eigenvector matrix.
  double vector_condition = 1.0;
  /// Set when vector_condition exceeds the ceiling and the caller allowed it.
  bool near_defective = false;
};

struct MetricOptions {
  // Not an aggregate, so build_metric(H, {1, -1}) picks the signs overload.
  MetricOptions() = default;

  double tol = kDefaultTol;
  /// cond(eigenvector matrix) above which the metric is flagged NearDefective.
  double vector_condition_ceiling = 1e8;
  /// Return flagged metrics instead of throwing NearDefective past the ceiling.
  bool allow_near_defective = false;
};

/// Throws BrokenPhase if H has complex eigenvalues, NearDefective at an
/// exceptional point or past the vector-condition ceiling (unless allowed),
/// InvalidArgument for malformed signs.
MetricOperator build_metric(const ComplexMatrix& H, const std::vector<int>& signs,
                            const MetricOptions& options = {});

/// build_metric with all signs +1.
MetricOperator build_metric(const ComplexMatrix& H, const MetricOptions& options = {});

struct ProfileEntry {
  double b = 0.0;
  double cond = 1.0;
  double min_eigenvalue = 0.0;
  double residual = 0.0;
  bool near_defective = false;
};

/// cond(eta) for toy_hamiltonian(a, b, PtMinus) at each b, all signs +1.
/// Points past the vector-condition ceiling are flagged, not refused; errors
/// from build_metric (BrokenPhase, NearDefective at the exceptional point)
/// propagate.
std::vector<ProfileEntry> metric_singularity_profile(double a, const std::vector<double>& b_values);

struct HermitizationReport {
  /// ||eta H - H^dagger eta|| / (||eta|| ||H||)
  double intertwining_residual = 0.0;
  /// ||h - h^dagger|| / ||h|| for h = eta^{1/2} H eta^{-1/2}; present when
  /// the square-root form was computed.
  std::optional<double> hermiticity_residual;
};

/// Checks eta against H. With `square_root` set, also forms the similar
/// matrix h = eta^{1/2} H eta^{-1/2} and throws NotPositiveDefinite if eta is
/// not positive definite.
HermitizationReport verify_hermitization(const ComplexMatrix& H, const ComplexMatrix& eta,
                                         bool square_root = true);

HermitizationReport verify_hermitization(const ComplexMatrix& H, const MetricOperator& metric,
                                         bool square_root = true);

}  // namespace pseudoherm
