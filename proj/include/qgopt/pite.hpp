#pragma once

#include "qgopt/common.hpp"
#include "qgopt/hamiltonian.hpp"
#include "qgopt/propagator.hpp"
#include "qgopt/spectral.hpp"

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace qgopt {

inline constexpr const char* kSamplerName = "inverse_cdf_multinomial/mt19937_64/v1";

/// Initial weights over candidate geometries (a probability vector).
struct InitialGuess {
  std::vector<double> weights;

  static InitialGuess uniform(std::uint64_t n) {
    InitialGuess g;
    g.weights.assign(n, 1.0 / static_cast<double>(n));
    return g;
  }

  static InitialGuess point(std::uint64_t n, std::uint64_t j) {
    if (j >= n) throw bounds_error("InitialGuess::point: index out of range");
    InitialGuess g;
    g.weights.assign(n, 0.0);
    g.weights[j] = 1.0;
    return g;
  }

  void validate() const {
    if (weights.empty()) throw validation_error("InitialGuess: empty weight vector");
    double sum = 0.0;
    for (double w : weights) {
      if (w < 0.0) throw validation_error("InitialGuess: weights must be nonnegative");
      sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-8)
      throw validation_error("InitialGuess: weights must sum to 1 (got " + std::to_string(sum) + ")");
  }
};

/// Reference electronic state per candidate geometry. The built-in Gaussian
/// kinds cover two electrons in 1D, centered at the bond midpoint:
///   symmetric      ~ exp(-[(x0 - Xm)^2 + (x1 - Xm)^2] / w^2)
///   antisymmetric  ~ (x0 - x1)/w times the symmetric profile
struct ReferenceSpec {
  enum class Kind { gaussian_symmetric, gaussian_antisymmetric, custom };
  Kind kind = Kind::gaussian_symmetric;
  double width = 3.0;
  std::function<std::vector<complexd>(const std::vector<int>&, const RegisterLayout&,
                                      const GeometryGrid&)>
      custom;
};

inline std::vector<complexd> prepare_reference(const std::vector<int>& J,
                                               const ReferenceSpec& spec,
                                               const RegisterLayout& layout,
                                               const GeometryGrid& grid) {
  if (spec.kind == ReferenceSpec::Kind::custom) {
    if (!spec.custom) throw validation_error("prepare_reference: custom provider not set");
    auto state = spec.custom(J, layout, grid);
    if (state.size() != layout.electronic_dimension())
      throw validation_error("prepare_reference: custom state has wrong dimension");
    return state;
  }
  if (layout.n_e != 2 || layout.spatial_dim != 1)
    throw validation_error("prepare_reference: built-in Gaussian kinds require n_e = 2 in 1D");
  if (!(spec.width > 0.0)) throw validation_error("prepare_reference: width must be > 0");

  const auto nuclei = geometry_coordinates(J, grid);
  double xm = 0.0;
  for (const auto& r : nuclei) xm += r[0];
  xm /= static_cast<double>(nuclei.size());

  const int n = layout.points_per_axis();
  const double w2 = spec.width * spec.width;
  std::vector<complexd> state(layout.electronic_dimension());
  double norm_sq = 0.0;
  for (int k1 = 0; k1 < n; ++k1) {
    const double x1 = layout.coordinate(k1);
    for (int k0 = 0; k0 < n; ++k0) {
      const double x0 = layout.coordinate(k0);
      double amp = std::exp(-((x0 - xm) * (x0 - xm) + (x1 - xm) * (x1 - xm)) / w2);
      if (spec.kind == ReferenceSpec::Kind::gaussian_antisymmetric)
        amp *= (x0 - x1) / spec.width;
      state[static_cast<std::size_t>(k0) + static_cast<std::size_t>(k1) * n] = amp;
      norm_sq += amp * amp;
    }
  }
  if (!(norm_sq > 1e-300))
    throw numerical_error("prepare_reference: state vanished after discretization; "
                          "increase the grid resolution or the width");
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (auto& a : state) a *= inv;
  return state;
}

/// Composite input state: sum_J sqrt(w_0J) |psi_ref[J]> (x) |J>.
inline CompositeState prepare_input(const InitialGuess& guess, const ReferenceSpec& spec,
                                    const RegisterLayout& layout, const GeometryGrid& grid) {
  guess.validate();
  if (guess.weights.size() != grid.geometry_count())
    throw validation_error("prepare_input: guess covers " + std::to_string(guess.weights.size()) +
                           " geometries, grid has " + std::to_string(grid.geometry_count()));
  CompositeState state = CompositeState::zero(layout, grid);
  const std::uint64_t dim_e = state.electronic_dim();
  for (std::uint64_t j = 0; j < state.geometry_dim(); ++j) {
    if (guess.weights[j] == 0.0) continue;
    const auto ref = prepare_reference(grid.unflatten_geometry(j), spec, layout, grid);
    const double amp = std::sqrt(guess.weights[j]);
    complexd* block = state.block(j);
    for (std::uint64_t k = 0; k < dim_e; ++k) block[k] = amp * ref[k];
  }
  state.normalize();
  return state;
}

/// w_J = sum_K |c_{K,J}|^2.
inline Eigen::VectorXd extract_weights(const CompositeState& state) {
  Eigen::VectorXd w(static_cast<Eigen::Index>(state.geometry_dim()));
  const std::uint64_t dim_e = state.electronic_dim();
  for (std::uint64_t j = 0; j < state.geometry_dim(); ++j) {
    const complexd* block = state.block(j);
    double acc = 0.0;
    for (std::uint64_t k = 0; k < dim_e; ++k) acc += std::norm(block[k]);
    w(static_cast<Eigen::Index>(j)) = acc;
  }
  return w;
}

/// Index of the largest weight; ties resolve to the smallest flattened index.
inline std::uint64_t argmax_geometry(const Eigen::VectorXd& weights) {
  if (weights.size() == 0) throw validation_error("argmax_geometry: empty weights");
  Eigen::Index best = 0;
  for (Eigen::Index j = 1; j < weights.size(); ++j)
    if (weights(j) > weights(best)) best = j;
  return static_cast<std::uint64_t>(best);
}

/// Seeded multinomial draw by inverse-CDF lookup; reproducible everywhere.
inline std::vector<std::uint64_t> sample_histogram(const Eigen::VectorXd& weights, long long shots,
                                                   std::uint64_t seed) {
  if (shots < 1) throw validation_error("sample_histogram: shots must be >= 1");
  std::vector<double> cdf(static_cast<std::size_t>(weights.size()));
  double acc = 0.0;
  for (Eigen::Index j = 0; j < weights.size(); ++j) {
    acc += std::max(0.0, weights(j));
    cdf[static_cast<std::size_t>(j)] = acc;
  }
  if (!(acc > 0.0)) throw validation_error("sample_histogram: weights sum to zero");
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(weights.size()), 0);
  std::mt19937_64 rng(seed);
  for (long long s = 0; s < shots; ++s) {
    const double u = canonical_uniform(rng) * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    ++counts[static_cast<std::size_t>(it - cdf.begin())];
  }
  return counts;
}

struct PiteOptions {
  int n_steps = 19;
  TauSchedule schedule;
  double gamma = 0.9;
  std::optional<double> e_shift;        // default: potential floor
  long long shots = 0;                  // 0 disables histogram sampling
  std::uint64_t seed = 0;
  bool ground_state_weights = false;    // per-step w_{J,gs} via diagonalization
  int dense_cap = kDefaultDenseCap;
  int threads = 1;
};

struct PiteReport {
  std::vector<std::vector<double>> weights;    // (n_steps + 1) rows; row 0 = input
  std::vector<std::uint64_t> argmax;           // per row
  std::vector<StepOutcome> outcomes;           // n_steps entries
  double cumulative_success = 1.0;
  std::vector<std::vector<double>> gs_weights; // optional, same shape as weights
  std::vector<std::uint64_t> histogram;        // counts over J from the final row
  double gamma = 0.9;
  double e_shift = 0.0;
  long long shots = 0;
  std::uint64_t seed = 0;
  std::string sampler = kSamplerName;
};

namespace detail {

/// Ground eigenvector of each candidate's Hamiltonian on the full grid.
inline std::vector<Eigen::VectorXd> ground_states_per_geometry(const RegisterLayout& layout,
                                                               const PotentialDiagonal& pot,
                                                               int dense_cap, int threads) {
  std::vector<Eigen::VectorXd> gs(pot.geometry_dim);
  parallel_for(pot.geometry_dim, threads, [&](std::uint64_t j0, std::uint64_t j1) {
    for (std::uint64_t j = j0; j < j1; ++j) {
      if (layout.n_e == 2 && layout.spatial_dim == 1) {
        auto spec = diagonalize_two_electron_1d(layout, pot.column(j), 1);
        int parity = 0;
        gs[j] = spec.ground_state_full(parity);
      } else {
        auto dec = diagonalize_lowest(dense_hamiltonian(layout, pot.column(j), dense_cap), 1);
        gs[j] = dec.eigenvectors.col(0);
      }
    }
  });
  return gs;
}

inline std::vector<double> gs_weight_row(const CompositeState& state,
                                         const std::vector<Eigen::VectorXd>& gs) {
  const std::uint64_t dim_e = state.electronic_dim();
  std::vector<double> row(gs.size());
  for (std::uint64_t j = 0; j < gs.size(); ++j) {
    complexd overlap(0.0, 0.0);
    const complexd* block = state.block(j);
    const Eigen::VectorXd& phi = gs[j];
    for (std::uint64_t k = 0; k < dim_e; ++k) overlap += phi(static_cast<Eigen::Index>(k)) * block[k];
    row[j] = std::norm(overlap);
  }
  return row;
}

} // namespace detail

/// Full optimization pipeline: prepare input, evolve, record per-step weights
/// and (optionally) the ground-state weight of each candidate.
inline PiteReport run_pite(const RegisterLayout& layout, const GeometryGrid& grid,
                           const PotentialTerms& terms, const InitialGuess& guess,
                           const ReferenceSpec& spec, const PiteOptions& opt) {
  const PotentialDiagonal pot = build_potential_diagonal(layout, grid, terms, opt.threads);
  const KineticSpectrum kin = build_kinetic_spectrum(layout);
  CompositeState state = prepare_input(guess, spec, layout, grid);

  PiteReport report;
  report.gamma = opt.gamma;
  report.e_shift = opt.e_shift.value_or(default_energy_shift(pot));
  report.seed = opt.seed;
  report.shots = opt.shots;

  std::vector<Eigen::VectorXd> gs;
  if (opt.ground_state_weights)
    gs = detail::ground_states_per_geometry(layout, pot, opt.dense_cap, opt.threads);

  auto record = [&](const CompositeState& s) {
    Eigen::VectorXd w = extract_weights(s);
    report.weights.emplace_back(w.data(), w.data() + w.size());
    report.argmax.push_back(argmax_geometry(w));
    if (opt.ground_state_weights) report.gs_weights.push_back(detail::gs_weight_row(s, gs));
  };
  record(state);

  IteTrajectory traj =
      evolve_ite(state, opt.n_steps, opt.schedule, opt.gamma, report.e_shift, pot, kin,
                 [&](int, const CompositeState& s) { record(s); });
  report.outcomes = std::move(traj.steps);
  report.cumulative_success = traj.cumulative_success;

  if (opt.shots > 0) {
    Eigen::VectorXd final_w = Eigen::Map<const Eigen::VectorXd>(
        report.weights.back().data(), static_cast<Eigen::Index>(report.weights.back().size()));
    report.histogram = sample_histogram(final_w, opt.shots, opt.seed);
  }
  return report;
}

struct ClassicalPiteOptions {
  std::optional<TauSchedule> schedule; // used when set, otherwise constant dtau
  double dtau = 0.004;
  int n_steps = 19;
  double gamma = 0.9;
  std::optional<double> e_shift; // default: min candidate energy
  long long shots = 0;
  std::uint64_t seed = 0;
};

/// Point-charge special case: the Hamiltonian is diagonal over geometries, so
/// the weights follow the closed form w_J(tau) ~ w_0J e^{-2 E_J tau}.
inline PiteReport run_classical_pite(const std::vector<double>& energies,
                                     const InitialGuess& guess, const ClassicalPiteOptions& opt) {
  guess.validate();
  if (energies.size() != guess.weights.size())
    throw validation_error("run_classical_pite: energies/weights size mismatch");
  if (opt.n_steps < 1) throw validation_error("run_classical_pite: n_steps must be >= 1");
  if (!opt.schedule && !(opt.dtau > 0.0))
    throw validation_error("run_classical_pite: dtau must be > 0");
  if (opt.schedule) opt.schedule->validate();
  if (!(opt.gamma > 0.0 && opt.gamma <= 1.0))
    throw validation_error("run_classical_pite: gamma must be in (0, 1]");

  const std::size_t n = energies.size();
  const double e_min = *std::min_element(energies.begin(), energies.end());
  const double e_shift = opt.e_shift.value_or(e_min);

  PiteReport report;
  report.gamma = opt.gamma;
  report.e_shift = e_shift;
  report.seed = opt.seed;
  report.shots = opt.shots;

  auto weights_at = [&](double tau) {
    // stabilized against the minimum energy; normalization removes the shift
    std::vector<double> w(n);
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      w[j] = guess.weights[j] * std::exp(-2.0 * (energies[j] - e_min) * tau);
      sum += w[j];
    }
    for (auto& x : w) x /= sum;
    return w;
  };
  auto mean_energy = [&](const std::vector<double>& w) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += w[j] * energies[j];
    return acc;
  };
  auto record = [&](const std::vector<double>& w) {
    report.weights.push_back(w);
    Eigen::Map<const Eigen::VectorXd> wm(w.data(), static_cast<Eigen::Index>(n));
    report.argmax.push_back(argmax_geometry(wm));
  };

  double tau = 0.0;
  auto w_prev = weights_at(tau);
  record(w_prev);
  for (int k = 0; k < opt.n_steps; ++k) {
    const double dt = opt.schedule ? tau_at(k, *opt.schedule) : opt.dtau;
    tau += dt;
    auto w_now = weights_at(tau);
    StepOutcome o;
    o.dtau = dt;
    o.energy_before = mean_energy(w_prev);
    o.energy_after = mean_energy(w_now);
    double decay = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      decay += w_prev[j] * std::exp(-2.0 * (energies[j] - e_shift) * dt);
    o.raw_norm = std::sqrt(decay);
    o.success_probability = std::min(1.0, opt.gamma * opt.gamma * decay);
    report.outcomes.push_back(o);
    report.cumulative_success *= o.success_probability;
    record(w_now);
    w_prev = std::move(w_now);
  }

  if (opt.shots > 0) {
    Eigen::Map<const Eigen::VectorXd> final_w(report.weights.back().data(),
                                              static_cast<Eigen::Index>(n));
    report.histogram = sample_histogram(final_w, opt.shots, opt.seed);
  }
  return report;
}

/// Exact imaginary-time weights from per-geometry spectra:
/// w_J(tau) ~ w_0J sum_n |<phi_n[J]|psi_ref[J]>|^2 e^{-2 E_n[J] tau}.
inline Eigen::VectorXd spectral_weight_oracle(const RegisterLayout& layout,
                                              const GeometryGrid& grid,
                                              const PotentialTerms& terms,
                                              const InitialGuess& guess,
                                              const ReferenceSpec& spec, double tau,
                                              int dense_cap = kDefaultDenseCap, int threads = 1) {
  guess.validate();
  const PotentialDiagonal pot = build_potential_diagonal(layout, grid, terms, threads);
  const std::uint64_t n_geom = pot.geometry_dim;
  if (guess.weights.size() != n_geom)
    throw validation_error("spectral_weight_oracle: guess/grid size mismatch");

  // Per geometry: eigenvalues and squared overlaps with the reference state.
  std::vector<Eigen::VectorXd> evals(n_geom), olap_sq(n_geom);
  parallel_for(n_geom, threads, [&](std::uint64_t j0, std::uint64_t j1) {
    for (std::uint64_t j = j0; j < j1; ++j) {
      const auto ref = prepare_reference(grid.unflatten_geometry(j), spec, layout, grid);
      Eigen::VectorXd ref_real(static_cast<Eigen::Index>(ref.size()));
      for (std::size_t k = 0; k < ref.size(); ++k) {
        if (std::abs(ref[k].imag()) > 1e-14)
          throw validation_error("spectral_weight_oracle: complex reference states unsupported");
        ref_real(static_cast<Eigen::Index>(k)) = ref[k].real();
      }
      if (layout.n_e == 2 && layout.spatial_dim == 1) {
        auto two = diagonalize_two_electron_1d(layout, pot.column(j));
        Eigen::VectorXd os = two.evecs_sym.transpose() * two.project(ref_real.data(), true);
        Eigen::VectorXd oa = two.evecs_anti.transpose() * two.project(ref_real.data(), false);
        evals[j].resize(os.size() + oa.size());
        olap_sq[j].resize(os.size() + oa.size());
        evals[j] << two.evals_sym, two.evals_anti;
        olap_sq[j] << os.cwiseAbs2(), oa.cwiseAbs2();
      } else {
        auto dec = diagonalize(dense_hamiltonian(layout, pot.column(j), dense_cap));
        evals[j] = dec.eigenvalues;
        olap_sq[j] = (dec.eigenvectors.transpose() * ref_real).cwiseAbs2();
      }
    }
  });

  double e_ref = evals[0].minCoeff();
  for (std::uint64_t j = 1; j < n_geom; ++j) e_ref = std::min(e_ref, evals[j].minCoeff());

  Eigen::VectorXd w(static_cast<Eigen::Index>(n_geom));
  for (std::uint64_t j = 0; j < n_geom; ++j) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < evals[j].size(); ++i)
      acc += olap_sq[j](i) * std::exp(-2.0 * (evals[j](i) - e_ref) * tau);
    w(static_cast<Eigen::Index>(j)) = guess.weights[j] * acc;
  }
  const double sum = w.sum();
  if (!(sum > 0.0)) throw numerical_error("spectral_weight_oracle: all weights underflowed");
  return w / sum;
}

} // namespace qgopt
