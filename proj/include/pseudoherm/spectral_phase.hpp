#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pseudoherm/linalg.hpp"
#include "pseudoherm/pt_algebra.hpp"

namespace pseudoherm {

enum class Phase { AllReal, ConjugatePairs, Exceptional };

std::string_view to_string(Phase phase);

/// Tolerances for classify(). `imag` and `pair` are relative to the spectral
/// radius; `defect` is an angle in radians.
struct ClassifyTolerances {
  double imag = 1e-9;
  double pair = 1e-9;
  double defect = 1e-6;
  /// Relative radius within which eigenvalues are treated as one cluster when
  /// counting algebraic multiplicity.
  double cluster = 1e-4;
};

struct DefectEntry {
  Complex eigenvalue;
  int geometric = 0;
  int algebraic = 0;
};

struct SpectrumReport {
  ComplexVector eigenvalues;
  Phase phase = Phase::AllReal;
  /// Index pairs (i, j) with eigenvalues[i] = conj(eigenvalues[j]); i < j.
  /// Filled for ConjugatePairs; real eigenvalues are not listed.
  std::vector<std::pair<int, int>> pairing;
  /// Indices of non-real eigenvalues that found no conjugate partner.
  std::vector<int> unpaired;
  /// Eigenvalue clusters whose geometric multiplicity is below the algebraic one.
  std::vector<DefectEntry> defect;
  /// Smallest principal angle between distinct right eigenvectors, in [0, pi/2].
  double min_vector_angle = 0.0;
  double eig_residual = 0.0;
  /// Set when eig() raised ConvergenceFailure and the phase was forced to Exceptional.
  bool convergence_failure = false;
  std::string diagnostic;
};

/// Closed-form toy energies (-sqrt(a^2 +- b^2), +sqrt(a^2 +- b^2)); for a
/// negative radicand the second root carries the positive imaginary part.
std::pair<Complex, Complex> toy_energies(const ToyParams& p);

/// Spectral regime with precedence Exceptional > ConjugatePairs > AllReal.
SpectrumReport classify(const ComplexMatrix& H, const ClassifyTolerances& tols = {});

struct PhasePoint {
  double a = 0.0;
  double b = 0.0;
  Phase phase = Phase::AllReal;
  /// a^2 - b^2
  double gap = 0.0;
  ComplexVector eigenvalues;
};

/// Adjacent grid indices (i, i+1) whose phases differ.
struct PhaseTransition {
  std::size_t lower = 0;
  std::size_t upper = 0;
  Phase from = Phase::AllReal;
  Phase to = Phase::AllReal;
};

struct SweepResult {
  std::vector<PhasePoint> points;
  std::vector<PhaseTransition> transitions;
};

/// Classifies toy_hamiltonian(a, b, PtMinus) at each b. The grid must be
/// nonempty and strictly monotone. Grid points are evaluated in parallel.
SweepResult sweep(double a, const std::vector<double>& b_grid, const ClassifyTolerances& tols = {});

/// Bisection on the sign of the discriminant a^2 - b^2 between b_lo and b_hi.
/// Throws NoBracket unless one end is AllReal and the other ConjugatePairs.
double locate_exceptional(double a, double b_lo, double b_hi, double tol_b = 1e-10,
                          const ClassifyTolerances& tols = {});

}  // namespace pseudoherm
