#pragma once

#include <functional>
#include <vector>

#include "pseudoherm/linalg.hpp"
#include "pseudoherm/pt_algebra.hpp"

namespace pseudoherm {

/// Time-dependent Hamiltonian supplied as a callable t -> H(t).
using HamiltonianPath = std::function<ComplexMatrix(double)>;

/// exp(-i H dt). Valid for defective H.
ComplexMatrix propagator(const ComplexMatrix& H, double dt);

/// ||U^dagger P U - P|| / ||P||
double check_pseudounitarity(const ComplexMatrix& U, const Involution& P);

/// Samples recorded at each grid time t_k (units with hbar = 1).
struct Trajectory {
  std::vector<double> times;
  std::vector<ComplexMatrix> hamiltonians;
  std::vector<ComplexVector> states;
  /// <psi|P|psi>, real up to roundoff.
  std::vector<Complex> pseudo_norms;
  /// Instantaneous eigenvalues of H(t_k) in canonical order.
  std::vector<ComplexVector> energies;
};

struct EvolveOptions {
  bool record_hamiltonians = true;
  bool record_energies = true;
};

/// Piecewise-constant midpoint stepping psi_{k+1} = exp(-i H(t_k + dt/2) dt) psi_k
/// on a strictly increasing grid. Each step is exactly P-pseudo-unitary when
/// H is P-pseudo-Hermitian. Throws StepRejected on non-finite intermediates.
Trajectory evolve(const HamiltonianPath& hamiltonian, const ComplexVector& psi0,
                  const std::vector<double>& times, const Involution& P,
                  const EvolveOptions& options = {});

Trajectory evolve(const ComplexMatrix& hamiltonian, const ComplexVector& psi0,
                  const std::vector<double>& times, const Involution& P,
                  const EvolveOptions& options = {});

/// steps + 1 equally spaced points from t0 to t1 inclusive.
std::vector<double> uniform_grid(double t0, double t1, std::size_t steps);

/// max_k |pn_k - pn_0| / |pn_0| over a trajectory.
double pseudo_norm_drift(const Trajectory& trajectory);

}  // namespace pseudoherm
