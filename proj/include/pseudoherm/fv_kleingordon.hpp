#pragma once

// Free Klein-Gordon field in the two-component Feshbach-Villars form on a 1D
// momentum grid, natural units (hbar = c = m = 1).
//
// Convention: phi = (psi + i psi_dot) / 2, chi = (psi - i psi_dot) / 2. With
// it, i d/dt (phi, chi) = H_k (phi, chi) per mode is equivalent to
// psi_ddot = -(1 + k^2) psi, where
//
//   H_k = k^2/2 (sigma_3 + i sigma_2) + sigma_3
//       = [[1 + k^2/2,  k^2/2], [-k^2/2, -1 - k^2/2]].

#include <cstdint>
#include <utility>
#include <vector>

#include "pseudoherm/linalg.hpp"

namespace pseudoherm::fv {

class MomentumGrid {
 public:
  /// Explicit nodes and quadrature weights. Nodes finite and strictly
  /// increasing, weights finite and nonnegative.
  MomentumGrid(std::vector<double> k_values, std::vector<double> weights);

  /// n equally spaced nodes on [k_min, k_max] with trapezoid weights; a
  /// single node gets weight 1.
  static MomentumGrid uniform(double k_min, double k_max, std::size_t n);

  /// One mode with weight 1.
  static MomentumGrid single(double k);

  const std::vector<double>& k_values() const noexcept { return k_; }
  const std::vector<double>& weights() const noexcept { return w_; }
  std::size_t size() const noexcept { return k_.size(); }

  friend bool operator==(const MomentumGrid&, const MomentumGrid&) = default;

 private:
  std::vector<double> k_;
  std::vector<double> w_;
};

struct FvState {
  MomentumGrid grid;
  ComplexVector phi;
  ComplexVector chi;
};

struct FvBlock {
  double k = 0.0;
  ComplexMatrix matrix;
};

FvBlock fv_block(double k);

/// (-omega, +omega), omega = sqrt(1 + k^2).
std::pair<double, double> dispersion(double k);

/// Throws GridMismatch if the arrays do not match the grid size.
FvState kg_to_fv(const MomentumGrid& grid, const ComplexVector& psi, const ComplexVector& psi_dot);

/// Inverse of kg_to_fv: psi = phi + chi, psi_dot = -i (phi - chi).
std::pair<ComplexVector, ComplexVector> fv_to_kg(const FvState& state);

/// Q = sum_k w_k (|phi_k|^2 - |chi_k|^2). Indefinite.
double charge(const FvState& state);

/// Sum_k w_k (|phi_k|^2 + |chi_k|^2). Not conserved in general.
double two_component_norm(const FvState& state);

struct FvEvolution {
  /// Time of every step, including t = 0.
  std::vector<double> times;
  /// Charge at every entry of `times`.
  std::vector<double> charges;
  /// Snapshot times, a subset of `times` always containing 0 and t_final.
  std::vector<double> snapshot_times;
  std::vector<FvState> snapshots;
};

/// Exact per-mode stepping with exp(-i H_k dt), dt = t_final / n_steps.
/// `snapshot_every` selects how often full states are kept (the final state
/// is always kept).
FvEvolution fv_evolve(const FvState& state0, double t_final, std::size_t n_steps,
                      std::size_t snapshot_every = 1);

/// exp(-i H_k dt) in closed form: cos(omega dt) I - i sin(omega dt)/omega H_k,
/// using H_k^2 = omega^2 I.
ComplexMatrix mode_propagator(double k, double dt);

/// Evolves single-mode initial data (psi0, psi_dot0) through the FV form over
/// [0, t_final] in n_steps and returns the largest deviation of the recovered
/// psi(t) from A e^{-i omega t} + B e^{+i omega t}.
double kg_consistency(Complex psi0, Complex psi_dot0, double k, double t_final,
                      std::size_t n_steps);

/// phi = amplitude * exp(-(k - k0)^2 / (2 width^2)), chi = 0.
FvState gaussian_packet(const MomentumGrid& grid, double k0, double width,
                        Complex amplitude = 1.0);

/// Seeded state with phi and chi drawn uniformly from [-1, 1) + i[-1, 1).
FvState random_state(const MomentumGrid& grid, std::uint64_t seed);

/// psi(x) = sum_k w_k e^{i k x} (phi_k + chi_k) at each x.
ComplexVector position_synthesis(const FvState& state, const std::vector<double>& x_values);

}  // namespace pseudoherm::fv
