#include "pseudoherm/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pseudoherm/errors.hpp"

namespace pseudoherm {

ComplexMatrix propagator(const ComplexMatrix& H, double dt) {
  if (!std::isfinite(dt)) throw InvalidArgument("propagator: dt must be finite");
  require_valid(H, "hamiltonian");
  return expm(Complex(0.0, -dt) * H);
}

double check_pseudounitarity(const ComplexMatrix& U, const Involution& P) {
  require_valid(U, "propagator");
  if (U.rows() != P.dim()) {
    throw DimensionMismatch("check_pseudounitarity: U and P differ in dimension");
  }
  const ComplexMatrix& p = P.matrix();
  return (U.adjoint() * p * U - p).norm() / p.norm();
}

std::vector<double> uniform_grid(double t0, double t1, std::size_t steps) {
  if (steps == 0) throw InvalidArgument("uniform_grid: steps must be >= 1");
  if (!std::isfinite(t0) || !std::isfinite(t1)) {
    throw InvalidArgument("uniform_grid: endpoints must be finite");
  }
  std::vector<double> grid(steps + 1);
  const double span = t1 - t0;
  for (std::size_t k = 0; k <= steps; ++k) {
    grid[k] = t0 + span * static_cast<double>(k) / static_cast<double>(steps);
  }
  grid.back() = t1;
  return grid;
}

Trajectory evolve(const HamiltonianPath& hamiltonian, const ComplexVector& psi0,
                  const std::vector<double>& times, const Involution& P,
                  const EvolveOptions& options) {
  if (times.empty()) throw InvalidArgument("evolve: time grid is empty");
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (!(times[k] > times[k - 1])) throw InvalidArgument("evolve: times must be strictly increasing");
  }
  if (psi0.size() != P.dim()) {
    throw DimensionMismatch("evolve: initial state and involution differ in dimension");
  }
  if (!psi0.allFinite()) throw InvalidArgument("evolve: initial state is not finite");

  Trajectory traj;
  traj.times = times;
  traj.states.reserve(times.size());
  traj.pseudo_norms.reserve(times.size());

  auto record = [&](double t, const ComplexVector& psi) {
    traj.states.push_back(psi);
    traj.pseudo_norms.push_back(pseudo_norm(P, psi));
    if (options.record_hamiltonians || options.record_energies) {
      const ComplexMatrix H = hamiltonian(t);
      if (options.record_energies) traj.energies.push_back(eigenvalues(H));
      if (options.record_hamiltonians) traj.hamiltonians.push_back(H);
    }
  };

  ComplexVector psi = psi0;
  record(times.front(), psi);

  ComplexMatrix last_H;
  double last_dt = 0.0;
  ComplexMatrix U;
  for (std::size_t k = 0; k + 1 < times.size(); ++k) {
    const double dt = times[k + 1] - times[k];
    const ComplexMatrix H = hamiltonian(times[k] + 0.5 * dt);
    if (H.rows() != psi.size() || !is_finite(H)) {
      throw StepRejected("evolve: Hamiltonian at t=" + std::to_string(times[k] + 0.5 * dt) +
                         " is malformed or non-finite");
    }
    if (U.size() == 0 || dt != last_dt || H != last_H) {
      U = propagator(H, dt);
      last_H = H;
      last_dt = dt;
    }
    psi = U * psi;
    if (!psi.allFinite()) {
      throw StepRejected("evolve: state became non-finite at t=" + std::to_string(times[k + 1]));
    }
    record(times[k + 1], psi);
  }
  return traj;
}

Trajectory evolve(const ComplexMatrix& hamiltonian, const ComplexVector& psi0,
                  const std::vector<double>& times, const Involution& P,
                  const EvolveOptions& options) {
  require_valid(hamiltonian, "hamiltonian");
  return evolve([&hamiltonian](double) { return hamiltonian; }, psi0, times, P, options);
}

double pseudo_norm_drift(const Trajectory& trajectory) {
  if (trajectory.pseudo_norms.empty()) return 0.0;
  const Complex ref = trajectory.pseudo_norms.front();
  double worst = 0.0;
  for (const Complex& pn : trajectory.pseudo_norms) worst = std::max(worst, std::abs(pn - ref));
  const double scale = std::abs(ref);
  return scale > 0.0 ? worst / scale : worst;
}

}  // namespace pseudoherm
