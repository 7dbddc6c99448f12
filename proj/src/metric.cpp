#include "pseudoherm/metric.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "pseudoherm/errors.hpp"
#include "pseudoherm/parallel.hpp"
#include "pseudoherm/pt_algebra.hpp"
#include "pseudoherm/spectral_phase.hpp"

namespace pseudoherm {

namespace {

double intertwining_residual(const ComplexMatrix& H, const ComplexMatrix& eta) {
  const double scale = eta.norm() * H.norm();
  if (scale == 0.0) return 0.0;
  return (eta * H - H.adjoint() * eta).norm() / scale;
}

}  // namespace

MetricOperator build_metric(const ComplexMatrix& H, const std::vector<int>& signs,
                            const MetricOptions& options) {
  require_valid(H);
  const Eigen::Index n = H.rows();
  if (static_cast<Eigen::Index>(signs.size()) != n) {
    throw InvalidArgument("build_metric: expected " + std::to_string(n) + " signs, got " +
                          std::to_string(signs.size()));
  }
  for (int s : signs) {
    if (s != 1 && s != -1) throw InvalidArgument("build_metric: signs must be +1 or -1");
  }

  const auto report = classify(H);
  if (report.phase == Phase::ConjugatePairs) {
    throw BrokenPhase("build_metric: spectrum has complex-conjugate pairs; no metric exists");
  }
  if (report.phase == Phase::Exceptional) {
    throw NearDefective("build_metric: exceptional point, eigenbasis is defective (" +
                        report.diagnostic + ")");
  }

  const EigenSystem es = eig(H, options.tol);
  MetricOperator out;
  out.signs = signs;
  out.vector_condition = es.vector_condition;
  if (!(es.vector_condition <= options.vector_condition_ceiling)) {
    if (!options.allow_near_defective) {
      throw NearDefective("build_metric: eigenvector condition number " +
                          std::to_string(es.vector_condition) + " exceeds ceiling " +
                          std::to_string(options.vector_condition_ceiling));
    }
    out.near_defective = true;
  }

  Eigen::VectorXd s(n);
  for (Eigen::Index i = 0; i < n; ++i) s[i] = signs[static_cast<std::size_t>(i)];
  const ComplexMatrix eta = es.left.adjoint() * s.cast<Complex>().asDiagonal() * es.left;
  out.eta = 0.5 * (eta + eta.adjoint());

  out.intertwining_residual = intertwining_residual(H, out.eta);
  if (!(out.intertwining_residual <= options.tol) && !out.near_defective) {
    throw NearDefective("build_metric: intertwining residual " +
                        std::to_string(out.intertwining_residual) + " exceeds tolerance");
  }

  const Eigen::SelfAdjointEigenSolver<ComplexMatrix> spectrum(out.eta, Eigen::EigenvaluesOnly);
  out.min_eigenvalue = spectrum.eigenvalues().minCoeff();
  out.cond = condition_number(out.eta);
  return out;
}

MetricOperator build_metric(const ComplexMatrix& H, const MetricOptions& options) {
  require_valid(H);
  return build_metric(H, std::vector<int>(static_cast<std::size_t>(H.rows()), 1), options);
}

std::vector<ProfileEntry> metric_singularity_profile(double a, const std::vector<double>& b_values) {
  if (!std::isfinite(a)) throw InvalidArgument("metric_singularity_profile: a must be finite");
  std::vector<ProfileEntry> out(b_values.size());
  MetricOptions options;
  options.allow_near_defective = true;
  parallel_for(b_values.size(), [&](std::size_t i) {
    const double b = b_values[i];
    const auto m = build_metric(toy_hamiltonian({a, b, ToySign::PtMinus}), options);
    out[i] = {b, m.cond, m.min_eigenvalue, m.intertwining_residual, m.near_defective};
  });
  return out;
}

HermitizationReport verify_hermitization(const ComplexMatrix& H, const ComplexMatrix& eta,
                                         bool square_root) {
  require_valid(H);
  require_valid(eta, "metric");
  if (H.rows() != eta.rows()) {
    throw DimensionMismatch("verify_hermitization: H and eta differ in dimension");
  }
  HermitizationReport out;
  out.intertwining_residual = intertwining_residual(H, eta);
  if (!square_root) return out;

  const ComplexMatrix herm = 0.5 * (eta + eta.adjoint());
  const Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm);
  if (!(solver.eigenvalues().minCoeff() > 0.0)) {
    throw NotPositiveDefinite("verify_hermitization: metric is not positive definite");
  }
  const ComplexMatrix h = solver.operatorSqrt() * H * solver.operatorInverseSqrt();
  const double scale = h.norm();
  out.hermiticity_residual = scale > 0.0 ? (h - h.adjoint()).norm() / scale : 0.0;
  return out;
}

HermitizationReport verify_hermitization(const ComplexMatrix& H, const MetricOperator& metric,
                                         bool square_root) {
  return verify_hermitization(H, metric.eta, square_root);
}

}  // namespace pseudoherm
