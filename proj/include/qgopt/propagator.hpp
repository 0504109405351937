#pragma once

#include "qgopt/common.hpp"
#include "qgopt/fft.hpp"
#include "qgopt/hamiltonian.hpp"
#include "qgopt/registers.hpp"

#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace qgopt {

/// Normalized amplitudes over the flattened (K, J) composite space,
/// electronic index fastest (one contiguous block per geometry).
struct CompositeState {
  RegisterLayout layout;
  GeometryGrid grid;
  std::vector<complexd> amplitudes;

  static CompositeState zero(const RegisterLayout& layout, const GeometryGrid& grid) {
    grid.validate();
    CompositeIndexer idx(layout, grid); // also enforces the addressable limit
    CompositeState s;
    s.layout = layout;
    s.grid = grid;
    s.amplitudes.assign(idx.total_dim(), complexd(0.0, 0.0));
    return s;
  }

  std::uint64_t electronic_dim() const { return layout.electronic_dimension(); }
  std::uint64_t geometry_dim() const { return grid.geometry_count(); }

  complexd* block(std::uint64_t j) { return amplitudes.data() + j * electronic_dim(); }
  const complexd* block(std::uint64_t j) const { return amplitudes.data() + j * electronic_dim(); }

  double norm() const {
    double acc = 0.0;
    for (const auto& a : amplitudes) acc += std::norm(a);
    return std::sqrt(acc);
  }

  void normalize() {
    const double n = norm();
    if (!(n > 1e-300)) throw numerical_error("CompositeState: norm underflow during normalization");
    const double inv = 1.0 / n;
    for (auto& a : amplitudes) a *= inv;
  }
};

/// Variable imaginary-time step: dtau_k = (1 - e^{-k/kappa}) (max - min) + min.
struct TauSchedule {
  double dtau_min = 0.2;
  double dtau_max = 0.3;
  double kappa = 8.0;

  void validate() const {
    if (!(dtau_min > 0.0)) throw validation_error("TauSchedule: dtau_min must be > 0");
    if (dtau_min > dtau_max) throw validation_error("TauSchedule: dtau_min must be <= dtau_max");
    if (!(kappa > 0.0)) throw validation_error("TauSchedule: kappa must be > 0");
  }

  static TauSchedule constant(double dtau) { return TauSchedule{dtau, dtau, 1.0}; }
};

inline double tau_at(int k, const TauSchedule& s) {
  if (k < 0) throw validation_error("tau_at: step index must be >= 0");
  return (1.0 - std::exp(-k / s.kappa)) * (s.dtau_max - s.dtau_min) + s.dtau_min;
}

inline double accumulated_tau(int n_steps, const TauSchedule& s) {
  double acc = 0.0;
  for (int k = 0; k < n_steps; ++k) acc += tau_at(k, s);
  return acc;
}

/// Result of one imaginary-time step on the success branch.
struct StepOutcome {
  double dtau = 0.0;
  double energy_before = 0.0;
  double energy_after = 0.0;
  double raw_norm = 0.0;            // |e^{-(H - E_shift) dtau} psi|
  double success_probability = 1.0; // gamma^2 raw_norm^2, clipped to (0, 1]
};

namespace detail {

inline void scale_momentum(CompositeState& state, const KineticSpectrum& kin,
                           const std::function<complexd(double)>& factor) {
  const std::uint64_t dim_e = state.electronic_dim();
  const std::uint64_t n_geom = state.geometry_dim();
  std::vector<complexd> table(dim_e);
  for (std::uint64_t k = 0; k < dim_e; ++k) table[k] = factor(kin.values[k]);
  transform_electronic(state.amplitudes.data(), state.layout, n_geom, true);
  for (std::uint64_t j = 0; j < n_geom; ++j) {
    complexd* block = state.block(j);
    for (std::uint64_t k = 0; k < dim_e; ++k) block[k] *= table[k];
  }
  transform_electronic(state.amplitudes.data(), state.layout, n_geom, false);
}

} // namespace detail

/// First-order split real-time step: the position-dependent phase first,
/// then the Fourier-diagonal kinetic phase. Norm-preserving.
inline void rte_step(CompositeState& state, double dt, const PotentialDiagonal& pot,
                     const KineticSpectrum& kin) {
  const std::uint64_t dim_e = state.electronic_dim();
  for (std::uint64_t j = 0; j < state.geometry_dim(); ++j) {
    complexd* block = state.block(j);
    const double* col = pot.column(j);
    for (std::uint64_t k = 0; k < dim_e; ++k)
      block[k] *= std::polar(1.0, -col[k] * dt);
  }
  detail::scale_momentum(state, kin, [dt](double t) { return std::polar(1.0, -t * dt); });
}

/// Idealized success branch of one probabilistic imaginary-time step:
/// e^{-V dtau} then e^{-T dtau}, renormalized; the recorded success
/// probability is gamma^2 |e^{-(H - E_shift) dtau} psi|^2.
inline StepOutcome ite_step(CompositeState& state, double dtau, double gamma, double e_shift,
                            const PotentialDiagonal& pot, const KineticSpectrum& kin) {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw validation_error("ite_step: gamma must be in (0, 1]");
  if (!(dtau > 0.0)) throw validation_error("ite_step: dtau must be > 0");
  StepOutcome out;
  out.dtau = dtau;
  out.energy_before = energy_expectation(state.layout, pot, kin, state.amplitudes.data());

  const std::uint64_t dim_e = state.electronic_dim();
  for (std::uint64_t j = 0; j < state.geometry_dim(); ++j) {
    complexd* block = state.block(j);
    const double* col = pot.column(j);
    for (std::uint64_t k = 0; k < dim_e; ++k) block[k] *= std::exp(-col[k] * dtau);
  }
  detail::scale_momentum(state, kin, [dtau](double t) { return complexd(std::exp(-t * dtau), 0.0); });

  const double decayed = state.norm();
  out.raw_norm = decayed * std::exp(e_shift * dtau);
  if (!(out.raw_norm > 1e-300))
    throw numerical_error("ite_step: success-branch norm underflow; "
                          "use a smaller dtau or a larger energy shift");
  state.normalize();
  out.success_probability = std::min(1.0, gamma * gamma * out.raw_norm * out.raw_norm);
  out.energy_after = energy_expectation(state.layout, pot, kin, state.amplitudes.data());
  return out;
}

struct IteTrajectory {
  std::vector<StepOutcome> steps;
  double cumulative_success = 1.0;
};

/// n_steps sequential ite_step calls with dtau_k from the schedule. The
/// optional callback observes the normalized state after each step.
inline IteTrajectory
evolve_ite(CompositeState& state, int n_steps, const TauSchedule& schedule, double gamma,
           double e_shift, const PotentialDiagonal& pot, const KineticSpectrum& kin,
           const std::function<void(int, const CompositeState&)>& on_step = {}) {
  if (n_steps < 1) throw validation_error("evolve_ite: n_steps must be >= 1");
  schedule.validate();
  IteTrajectory traj;
  traj.steps.reserve(static_cast<std::size_t>(n_steps));
  for (int k = 0; k < n_steps; ++k) {
    StepOutcome o = ite_step(state, tau_at(k, schedule), gamma, e_shift, pot, kin);
    traj.cumulative_success *= o.success_probability;
    traj.steps.push_back(o);
    if (on_step) on_step(k, state);
  }
  return traj;
}

/// Lower-bound proxy for the energy shift: the potential floor (kinetic >= 0),
/// which keeps every step's success probability at most gamma^2.
inline double default_energy_shift(const PotentialDiagonal& pot) { return pot.min_total(); }

} // namespace qgopt
