#include "pseudoherm/spectral_phase.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include <Eigen/SVD>

#include "pseudoherm/errors.hpp"
#include "pseudoherm/parallel.hpp"

namespace pseudoherm {

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::AllReal:
      return "AllReal";
    case Phase::ConjugatePairs:
      return "ConjugatePairs";
    case Phase::Exceptional:
      return "Exceptional";
  }
  return "Unknown";
}

std::pair<Complex, Complex> toy_energies(const ToyParams& p) {
  const double radicand =
      p.sign == ToySign::HermitianPlus ? p.a * p.a + p.b * p.b : p.a * p.a - p.b * p.b;
  const Complex root = std::sqrt(Complex(radicand, 0.0));
  return {-root, root};
}

namespace {

// Principal angle between two unit vectors; atan2 keeps precision near zero.
double vector_angle(const ComplexVector& u, const ComplexVector& v) {
  const Complex overlap = u.dot(v);
  const double sine = (v - overlap * u).norm();
  return std::atan2(sine, std::abs(overlap));
}

std::vector<int> cluster_ids(const ComplexVector& lambda, double radius) {
  const int n = static_cast<int>(lambda.size());
  std::vector<int> id(static_cast<std::size_t>(n));
  std::iota(id.begin(), id.end(), 0);
  // n is small; relabel until stable.
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        auto& a = id[static_cast<std::size_t>(i)];
        auto& b = id[static_cast<std::size_t>(j)];
        if (a != b && std::abs(lambda[i] - lambda[j]) <= radius) {
          a = b = std::min(a, b);
          changed = true;
        }
      }
    }
  }
  return id;
}

void find_defects(const EigenSystem& es, double matrix_scale, const ClassifyTolerances& tols,
                  SpectrumReport& report) {
  const int n = static_cast<int>(es.eigenvalues.size());
  report.min_vector_angle = std::acos(0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      report.min_vector_angle =
          std::min(report.min_vector_angle, vector_angle(es.right.col(i), es.right.col(j)));
    }
  }

  const auto id = cluster_ids(es.eigenvalues, tols.cluster * matrix_scale);
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int i = 0; i < n; ++i) {
    if (seen[static_cast<std::size_t>(i)]) continue;
    std::vector<int> members;
    for (int j = i; j < n; ++j) {
      if (id[static_cast<std::size_t>(j)] == id[static_cast<std::size_t>(i)]) {
        members.push_back(j);
        seen[static_cast<std::size_t>(j)] = true;
      }
    }
    if (members.size() < 2) continue;
    ComplexMatrix block(es.right.rows(), static_cast<Eigen::Index>(members.size()));
    Complex mean = 0.0;
    for (std::size_t k = 0; k < members.size(); ++k) {
      block.col(static_cast<Eigen::Index>(k)) = es.right.col(members[k]);
      mean += es.eigenvalues[members[k]];
    }
    mean /= static_cast<double>(members.size());
    const Eigen::JacobiSVD<ComplexMatrix> svd(block);
    const auto& s = svd.singularValues();
    int rank = 0;
    for (Eigen::Index k = 0; k < s.size(); ++k) {
      if (s[k] > tols.defect * s[0]) ++rank;
    }
    const int algebraic = static_cast<int>(members.size());
    if (rank < algebraic) report.defect.push_back({mean, rank, algebraic});
  }
}

void pair_conjugates(const ComplexVector& lambda, double imag_tol, double pair_tol,
                     SpectrumReport& report) {
  const int n = static_cast<int>(lambda.size());
  std::vector<int> upper;
  std::vector<int> lower;
  for (int i = 0; i < n; ++i) {
    if (lambda[i].imag() > imag_tol) upper.push_back(i);
    if (lambda[i].imag() < -imag_tol) lower.push_back(i);
  }
  std::vector<std::tuple<double, int, int>> candidates;
  for (int i : upper) {
    for (int j : lower) {
      const double d = std::abs(lambda[i] - std::conj(lambda[j]));
      if (d <= pair_tol) candidates.emplace_back(d, i, j);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (const auto& [d, i, j] : candidates) {
    if (used[static_cast<std::size_t>(i)] || used[static_cast<std::size_t>(j)]) continue;
    used[static_cast<std::size_t>(i)] = used[static_cast<std::size_t>(j)] = true;
    report.pairing.emplace_back(std::min(i, j), std::max(i, j));
  }
  std::sort(report.pairing.begin(), report.pairing.end());
  for (int i : upper) {
    if (!used[static_cast<std::size_t>(i)]) report.unpaired.push_back(i);
  }
  for (int j : lower) {
    if (!used[static_cast<std::size_t>(j)]) report.unpaired.push_back(j);
  }
  std::sort(report.unpaired.begin(), report.unpaired.end());
}

}  // namespace

SpectrumReport classify(const ComplexMatrix& H, const ClassifyTolerances& tols) {
  require_valid(H);
  if (!(tols.imag > 0.0 && tols.pair > 0.0 && tols.defect > 0.0 && tols.cluster > 0.0)) {
    throw InvalidArgument("classify: tolerances must be positive");
  }
  SpectrumReport report;
  const double matrix_scale = norm(H) > 0.0 ? norm(H) : 1.0;

  std::optional<EigenSystem> es;
  try {
    es = eig(H);
  } catch (const ConvergenceFailure& e) {
    report.convergence_failure = true;
    report.diagnostic = e.what();
  }

  if (!es) {
    report.eigenvalues = eigenvalues(H);
    report.phase = Phase::Exceptional;
    return report;
  }

  report.eigenvalues = es->eigenvalues;
  report.eig_residual = es->residual;
  double radius = report.eigenvalues.cwiseAbs().maxCoeff();
  if (radius == 0.0) radius = matrix_scale;

  find_defects(*es, matrix_scale, tols, report);
  pair_conjugates(report.eigenvalues, tols.imag * radius, tols.pair * radius, report);

  if (!report.defect.empty()) {
    report.phase = Phase::Exceptional;
    report.diagnostic = "eigenvector coalescence (min angle " +
                        std::to_string(report.min_vector_angle) + " rad)";
  } else if (!report.pairing.empty() || !report.unpaired.empty()) {
    report.phase = Phase::ConjugatePairs;
    if (!report.unpaired.empty()) report.diagnostic = "non-real eigenvalues without conjugate partner";
  } else {
    report.phase = Phase::AllReal;
  }
  return report;
}

SweepResult sweep(double a, const std::vector<double>& b_grid, const ClassifyTolerances& tols) {
  if (b_grid.empty()) throw InvalidArgument("sweep: b grid is empty");
  if (!std::isfinite(a)) throw InvalidArgument("sweep: a must be finite");
  if (b_grid.size() > 1) {
    const bool increasing = b_grid[1] > b_grid[0];
    for (std::size_t i = 1; i < b_grid.size(); ++i) {
      const bool ok = increasing ? b_grid[i] > b_grid[i - 1] : b_grid[i] < b_grid[i - 1];
      if (!ok) throw InvalidArgument("sweep: b grid must be strictly monotone");
    }
  }

  SweepResult out;
  out.points.resize(b_grid.size());
  parallel_for(b_grid.size(), [&](std::size_t i) {
    const double b = b_grid[i];
    const auto report = classify(toy_hamiltonian({a, b, ToySign::PtMinus}), tols);
    out.points[i] = PhasePoint{a, b, report.phase, a * a - b * b, report.eigenvalues};
  });
  for (std::size_t i = 1; i < out.points.size(); ++i) {
    if (out.points[i].phase != out.points[i - 1].phase) {
      out.transitions.push_back({i - 1, i, out.points[i - 1].phase, out.points[i].phase});
    }
  }
  return out;
}

double locate_exceptional(double a, double b_lo, double b_hi, double tol_b,
                          const ClassifyTolerances& tols) {
  if (!std::isfinite(a) || !std::isfinite(b_lo) || !std::isfinite(b_hi)) {
    throw InvalidArgument("locate_exceptional: inputs must be finite");
  }
  if (!(tol_b > 0.0)) throw InvalidArgument("locate_exceptional: tol_b must be positive");

  const Phase lo_phase = classify(toy_hamiltonian({a, b_lo, ToySign::PtMinus}), tols).phase;
  const Phase hi_phase = classify(toy_hamiltonian({a, b_hi, ToySign::PtMinus}), tols).phase;
  const bool bracket = (lo_phase == Phase::AllReal && hi_phase == Phase::ConjugatePairs) ||
                       (lo_phase == Phase::ConjugatePairs && hi_phase == Phase::AllReal);
  if (!bracket) {
    throw NoBracket("locate_exceptional: phases at b_lo (" + std::string(to_string(lo_phase)) +
                    ") and b_hi (" + std::string(to_string(hi_phase)) +
                    ") do not bracket a real/complex transition");
  }

  // tr^2 - 4 det of the toy matrix; positive on the real side.
  auto discriminant = [a](double b) {
    const ComplexMatrix H = toy_hamiltonian({a, b, ToySign::PtMinus});
    const Complex tr = H.trace();
    const Complex det = H(0, 0) * H(1, 1) - H(0, 1) * H(1, 0);
    return (tr * tr - 4.0 * det).real();
  };

  double lo = b_lo;
  double hi = b_hi;
  const bool lo_positive = discriminant(lo) > 0.0;
  while (std::abs(hi - lo) > tol_b) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double d = discriminant(mid);
    if (d == 0.0) return mid;
    if ((d > 0.0) == lo_positive) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace pseudoherm
