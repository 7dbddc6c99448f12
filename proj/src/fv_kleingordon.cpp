#include "pseudoherm/fv_kleingordon.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pseudoherm/errors.hpp"
#include "pseudoherm/pt_algebra.hpp"

namespace pseudoherm::fv {

namespace {

constexpr Complex kI{0.0, 1.0};

double omega(double k) { return std::sqrt(1.0 + k * k); }

void require_grid_size(const MomentumGrid& grid, Eigen::Index n, const char* what) {
  if (static_cast<std::size_t>(n) != grid.size()) {
    throw GridMismatch(std::string(what) + " has " + std::to_string(n) + " entries, grid has " +
                       std::to_string(grid.size()));
  }
}

}  // namespace

MomentumGrid::MomentumGrid(std::vector<double> k_values, std::vector<double> weights)
    : k_(std::move(k_values)), w_(std::move(weights)) {
  if (k_.empty()) throw InvalidArgument("momentum grid must have at least one node");
  if (k_.size() != w_.size()) throw GridMismatch("momentum grid: nodes and weights differ in size");
  for (std::size_t i = 0; i < k_.size(); ++i) {
    if (!std::isfinite(k_[i])) throw InvalidArgument("momentum grid: non-finite node");
    if (!std::isfinite(w_[i]) || w_[i] < 0.0) {
      throw InvalidArgument("momentum grid: weights must be finite and nonnegative");
    }
    if (i > 0 && !(k_[i] > k_[i - 1])) {
      throw InvalidArgument("momentum grid: nodes must be strictly increasing");
    }
  }
}

MomentumGrid MomentumGrid::uniform(double k_min, double k_max, std::size_t n) {
  if (n == 0) throw InvalidArgument("momentum grid: n must be >= 1");
  if (n == 1) return single(k_min);
  if (!(k_max > k_min)) throw InvalidArgument("momentum grid: k_max must exceed k_min");
  std::vector<double> k(n);
  std::vector<double> w(n);
  const double dk = (k_max - k_min) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    k[i] = k_min + dk * static_cast<double>(i);
    w[i] = (i == 0 || i + 1 == n) ? 0.5 * dk : dk;
  }
  k.back() = k_max;
  return MomentumGrid(std::move(k), std::move(w));
}

MomentumGrid MomentumGrid::single(double k) { return MomentumGrid({k}, {1.0}); }

FvBlock fv_block(double k) {
  if (!std::isfinite(k)) throw InvalidArgument("fv_block: k must be finite");
  const double half_k2 = 0.5 * k * k;
  ComplexMatrix m(2, 2);
  m << 1.0 + half_k2, half_k2, -half_k2, -1.0 - half_k2;
  return {k, m};
}

std::pair<double, double> dispersion(double k) {
  if (!std::isfinite(k)) throw InvalidArgument("dispersion: k must be finite");
  const double w = omega(k);
  return {-w, w};
}

FvState kg_to_fv(const MomentumGrid& grid, const ComplexVector& psi, const ComplexVector& psi_dot) {
  require_grid_size(grid, psi.size(), "psi");
  require_grid_size(grid, psi_dot.size(), "psi_dot");
  return {grid, 0.5 * (psi + kI * psi_dot), 0.5 * (psi - kI * psi_dot)};
}

std::pair<ComplexVector, ComplexVector> fv_to_kg(const FvState& state) {
  require_grid_size(state.grid, state.phi.size(), "phi");
  require_grid_size(state.grid, state.chi.size(), "chi");
  return {state.phi + state.chi, -kI * (state.phi - state.chi)};
}

double charge(const FvState& state) {
  require_grid_size(state.grid, state.phi.size(), "phi");
  require_grid_size(state.grid, state.chi.size(), "chi");
  double q = 0.0;
  for (std::size_t i = 0; i < state.grid.size(); ++i) {
    const auto j = static_cast<Eigen::Index>(i);
    q += state.grid.weights()[i] * (std::norm(state.phi[j]) - std::norm(state.chi[j]));
  }
  return q;
}

double two_component_norm(const FvState& state) {
  require_grid_size(state.grid, state.phi.size(), "phi");
  require_grid_size(state.grid, state.chi.size(), "chi");
  double n = 0.0;
  for (std::size_t i = 0; i < state.grid.size(); ++i) {
    const auto j = static_cast<Eigen::Index>(i);
    n += state.grid.weights()[i] * (std::norm(state.phi[j]) + std::norm(state.chi[j]));
  }
  return n;
}

ComplexMatrix mode_propagator(double k, double dt) {
  if (!std::isfinite(dt)) throw InvalidArgument("mode_propagator: dt must be finite");
  const double w = omega(k);
  const ComplexMatrix H = fv_block(k).matrix;
  return std::cos(w * dt) * ComplexMatrix::Identity(2, 2) - kI * (std::sin(w * dt) / w) * H;
}

FvEvolution fv_evolve(const FvState& state0, double t_final, std::size_t n_steps,
                      std::size_t snapshot_every) {
  if (n_steps < 1) throw InvalidArgument("fv_evolve: n_steps must be >= 1");
  if (!std::isfinite(t_final)) throw InvalidArgument("fv_evolve: t_final must be finite");
  if (snapshot_every < 1) snapshot_every = 1;
  require_grid_size(state0.grid, state0.phi.size(), "phi");
  require_grid_size(state0.grid, state0.chi.size(), "chi");

  const std::size_t modes = state0.grid.size();
  const double dt = t_final / static_cast<double>(n_steps);
  std::vector<ComplexMatrix> steps(modes);
  for (std::size_t i = 0; i < modes; ++i) steps[i] = mode_propagator(state0.grid.k_values()[i], dt);

  FvEvolution out;
  out.times.reserve(n_steps + 1);
  out.charges.reserve(n_steps + 1);
  FvState state = state0;
  auto record = [&](std::size_t step) {
    const double t = step == n_steps ? t_final : dt * static_cast<double>(step);
    out.times.push_back(t);
    out.charges.push_back(charge(state));
    if (step % snapshot_every == 0 || step == n_steps) {
      out.snapshot_times.push_back(t);
      out.snapshots.push_back(state);
    }
  };

  record(0);
  for (std::size_t step = 1; step <= n_steps; ++step) {
    for (std::size_t i = 0; i < modes; ++i) {
      const auto j = static_cast<Eigen::Index>(i);
      const ComplexMatrix& U = steps[i];
      const Complex phi = state.phi[j];
      const Complex chi = state.chi[j];
      state.phi[j] = U(0, 0) * phi + U(0, 1) * chi;
      state.chi[j] = U(1, 0) * phi + U(1, 1) * chi;
    }
    record(step);
  }
  return out;
}

double kg_consistency(Complex psi0, Complex psi_dot0, double k, double t_final,
                      std::size_t n_steps) {
  const MomentumGrid grid = MomentumGrid::single(k);
  ComplexVector psi(1);
  ComplexVector psi_dot(1);
  psi << psi0;
  psi_dot << psi_dot0;
  const auto run = fv_evolve(kg_to_fv(grid, psi, psi_dot), t_final, n_steps);

  const double w = omega(k);
  const Complex A = 0.5 * (psi0 + kI * psi_dot0 / w);
  const Complex B = 0.5 * (psi0 - kI * psi_dot0 / w);
  double worst = 0.0;
  for (std::size_t s = 0; s < run.snapshots.size(); ++s) {
    const double t = run.snapshot_times[s];
    const Complex exact = A * std::exp(-kI * w * t) + B * std::exp(kI * w * t);
    const Complex recovered = fv_to_kg(run.snapshots[s]).first[0];
    worst = std::max(worst, std::abs(recovered - exact));
  }
  return worst;
}

FvState gaussian_packet(const MomentumGrid& grid, double k0, double width, Complex amplitude) {
  if (!(width > 0.0)) throw InvalidArgument("gaussian_packet: width must be positive");
  const auto n = static_cast<Eigen::Index>(grid.size());
  FvState s{grid, ComplexVector(n), ComplexVector::Zero(n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d = (grid.k_values()[static_cast<std::size_t>(i)] - k0) / width;
    s.phi[i] = amplitude * std::exp(-0.5 * d * d);
  }
  return s;
}

FvState random_state(const MomentumGrid& grid, std::uint64_t seed) {
  const auto n = static_cast<Eigen::Index>(grid.size());
  const ComplexVector both = random_complex_vector(2 * n, seed);
  return {grid, both.head(n), both.tail(n)};
}

ComplexVector position_synthesis(const FvState& state, const std::vector<double>& x_values) {
  const auto psi = fv_to_kg(state).first;
  ComplexVector out = ComplexVector::Zero(static_cast<Eigen::Index>(x_values.size()));
  for (std::size_t xi = 0; xi < x_values.size(); ++xi) {
    Complex acc = 0.0;
    for (std::size_t i = 0; i < state.grid.size(); ++i) {
      acc += state.grid.weights()[i] * std::exp(kI * state.grid.k_values()[i] * x_values[xi]) *
             psi[static_cast<Eigen::Index>(i)];
    }
    out[static_cast<Eigen::Index>(xi)] = acc;
  }
  return out;
}

}  // namespace pseudoherm::fv
