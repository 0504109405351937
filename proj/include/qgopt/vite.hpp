#pragma once

#include "qgopt/common.hpp"
#include "qgopt/hamiltonian.hpp"
#include "qgopt/spectral.hpp"
#include "qgopt/statevector.hpp"

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace qgopt {

/// Layered hardware-efficient ansatz: an initial rotation layer followed by
/// `depth` repetitions of [all-pairs CZ entangler; rotation layer]. Parameter
/// j = layer * n_qubits + qubit; n_params = n_qubits * (depth + 1).
struct ViteAnsatz {
  int n_qubits = 1;
  int depth = 0;
  std::vector<char> axes; // per parameter; defaults to y everywhere

  static ViteAnsatz uniform_axis(int n_qubits, int depth, char axis = 'y') {
    ViteAnsatz a;
    a.n_qubits = n_qubits;
    a.depth = depth;
    a.axes.assign(static_cast<std::size_t>(n_qubits) * (depth + 1), axis);
    return a;
  }

  int n_params() const { return n_qubits * (depth + 1); }

  void validate() const {
    if (n_qubits < 1 || n_qubits > 24) throw validation_error("ViteAnsatz: bad qubit count");
    if (depth < 0) throw validation_error("ViteAnsatz: depth must be >= 0");
    if (static_cast<int>(axes.size()) != n_params())
      throw validation_error("ViteAnsatz: axes size must equal n_params");
    for (char c : axes)
      if (c != 'x' && c != 'y' && c != 'z')
        throw validation_error("ViteAnsatz: axes must be x, y or z");
  }
};

namespace detail {

// Applies rotations for parameters [from, n_params), inserting the entangler
// before each layer boundary (parameter indices that are multiples of n_qubits).
inline void apply_tail(StateVec& psi, const ViteAnsatz& ansatz, const Eigen::VectorXd& theta,
                       int from, const std::vector<double>& cz_signs) {
  for (int p = from; p < ansatz.n_params(); ++p) {
    if (p % ansatz.n_qubits == 0 && p > 0) apply_diagonal_signs(psi, cz_signs);
    apply_rotation(psi, p % ansatz.n_qubits, ansatz.axes[static_cast<std::size_t>(p)], theta(p));
  }
}

} // namespace detail

inline StateVec apply_ansatz(const ViteAnsatz& ansatz, const Eigen::VectorXd& theta) {
  ansatz.validate();
  if (theta.size() != ansatz.n_params())
    throw validation_error("apply_ansatz: expected " + std::to_string(ansatz.n_params()) +
                           " parameters, got " + std::to_string(theta.size()));
  StateVec psi = basis_zero_state(ansatz.n_qubits);
  const auto cz = full_cz_signs(ansatz.n_qubits);
  detail::apply_tail(psi, ansatz, theta, 0, cz);
  return psi;
}

/// d|Phi>/d theta_j: the circuit with (-i/2) sigma_axis inserted immediately
/// after rotation j.
inline StateVec gradient_state(const ViteAnsatz& ansatz, const Eigen::VectorXd& theta, int j) {
  ansatz.validate();
  if (theta.size() != ansatz.n_params()) throw validation_error("gradient_state: theta size mismatch");
  if (j < 0 || j >= ansatz.n_params()) throw bounds_error("gradient_state: parameter index out of range");
  StateVec psi = basis_zero_state(ansatz.n_qubits);
  const auto cz = full_cz_signs(ansatz.n_qubits);
  for (int p = 0; p <= j; ++p) {
    if (p % ansatz.n_qubits == 0 && p > 0) apply_diagonal_signs(psi, cz);
    apply_rotation(psi, p % ansatz.n_qubits, ansatz.axes[static_cast<std::size_t>(p)], theta(p));
  }
  apply_pauli(psi, j % ansatz.n_qubits, ansatz.axes[static_cast<std::size_t>(j)]);
  psi *= complexd(0.0, -0.5);
  detail::apply_tail(psi, ansatz, theta, j + 1, cz);
  return psi;
}

/// All gradient states as columns, via one forward pass with checkpoints.
inline Eigen::MatrixXcd all_gradient_states(const ViteAnsatz& ansatz,
                                            const Eigen::VectorXd& theta) {
  ansatz.validate();
  if (theta.size() != ansatz.n_params())
    throw validation_error("all_gradient_states: theta size mismatch");
  const int n_p = ansatz.n_params();
  const auto dim = Eigen::Index{1} << ansatz.n_qubits;
  const auto cz = full_cz_signs(ansatz.n_qubits);

  Eigen::MatrixXcd checkpoints(dim, n_p); // state after rotation p
  StateVec psi = basis_zero_state(ansatz.n_qubits);
  for (int p = 0; p < n_p; ++p) {
    if (p % ansatz.n_qubits == 0 && p > 0) apply_diagonal_signs(psi, cz);
    apply_rotation(psi, p % ansatz.n_qubits, ansatz.axes[static_cast<std::size_t>(p)], theta(p));
    checkpoints.col(p) = psi;
  }

  Eigen::MatrixXcd grads(dim, n_p);
  StateVec work(dim);
  for (int j = 0; j < n_p; ++j) {
    work = checkpoints.col(j);
    apply_pauli(work, j % ansatz.n_qubits, ansatz.axes[static_cast<std::size_t>(j)]);
    work *= complexd(0.0, -0.5);
    detail::apply_tail(work, ansatz, theta, j + 1, cz);
    grads.col(j) = work;
  }
  return grads;
}

/// M_{jj'} = Re <d_j Phi | d_j' Phi>; exactly symmetric by construction.
inline Eigen::MatrixXd m_matrix_from(const Eigen::MatrixXcd& grads) {
  const Eigen::Index n_p = grads.cols();
  Eigen::MatrixXd stacked(2 * grads.rows(), n_p);
  stacked.topRows(grads.rows()) = grads.real();
  stacked.bottomRows(grads.rows()) = grads.imag();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n_p, n_p);
  m.selfadjointView<Eigen::Lower>().rankUpdate(stacked.transpose());
  m.triangularView<Eigen::StrictlyUpper>() = m.transpose();
  return m;
}

inline Eigen::MatrixXd m_matrix(const ViteAnsatz& ansatz, const Eigen::VectorXd& theta) {
  return m_matrix_from(all_gradient_states(ansatz, theta));
}

/// V_j = -Re <d_j Phi | H | Phi>.
inline Eigen::VectorXd v_vector_from(const Eigen::MatrixXcd& grads, const StateVec& h_phi) {
  return -(grads.adjoint() * h_phi).real();
}

inline Eigen::VectorXd
v_vector(const ViteAnsatz& ansatz, const Eigen::VectorXd& theta,
         const std::function<void(const complexd*, complexd*)>& apply_h) {
  const StateVec phi = apply_ansatz(ansatz, theta);
  StateVec h_phi(phi.size());
  apply_h(phi.data(), h_phi.data());
  return v_vector_from(all_gradient_states(ansatz, theta), h_phi);
}

/// theta' = theta + dtau (M + lambda I)^{-1} V by a symmetric solve.
inline Eigen::VectorXd vite_update(const Eigen::VectorXd& theta, const Eigen::MatrixXd& m,
                                   const Eigen::VectorXd& v, double dtau, double lambda_reg) {
  if (m.rows() != m.cols() || m.rows() != theta.size() || v.size() != theta.size())
    throw validation_error("vite_update: inconsistent shapes");
  if (lambda_reg < 0.0) throw validation_error("vite_update: lambda_reg must be >= 0");
  Eigen::MatrixXd reg = m;
  reg.diagonal().array() += lambda_reg;
  Eigen::LDLT<Eigen::MatrixXd> solver(reg);
  if (solver.info() != Eigen::Success)
    throw numerical_error("vite_update: singular parameter metric after regularization");
  Eigen::VectorXd step = solver.solve(v);
  if (!step.allFinite())
    throw numerical_error("vite_update: non-finite update; increase lambda_reg");
  return theta + dtau * step;
}

struct ViteOptions {
  int depth = 12;
  double dtau = 0.01;
  int steps = 6000;
  std::uint64_t seed = 1;
  double lambda_reg = 1e-6;
  char axis = 'y';
  int track_geometry = -1; // -1: candidate with the lowest exact total energy
  int track_states = 3;    // eigencomponents recorded for the tracked geometry
  int dense_cap = kDefaultDenseCap;
  int threads = 1;
};

struct ViteStepRecord {
  double energy = 0.0;
  double energy_error = 0.0;
  std::vector<double> weights;           // nuclear-register marginal
  std::vector<double> component_weights; // |<phi_i[J*]|psi[J*]>|^2, renormalized in the block
};

struct ViteResult {
  std::vector<ViteStepRecord> trajectory; // steps + 1 records, row s = after s updates
  Eigen::VectorXd theta_final;
  double exact_energy = 0.0; // lowest total energy over all candidates
  std::vector<double> exact_energies; // ground total energy per candidate
  int tracked_geometry = 0;
  std::uint64_t seed = 0;
  std::string rng = "mt19937_64";
  ViteAnsatz ansatz;
};

/// Variational imaginary-time evolution over the joint nuclear+electronic
/// register. Expectations are evaluated exactly from the statevector.
inline ViteResult run_vite(const RegisterLayout& layout, const GeometryGrid& grid,
                           const PotentialTerms& terms, const ViteOptions& opt) {
  grid.validate();
  if (opt.steps < 1) throw validation_error("run_vite: steps must be >= 1");
  if (!(opt.dtau > 0.0)) throw validation_error("run_vite: dtau must be > 0");

  const PotentialDiagonal pot = build_potential_diagonal(layout, grid, terms, opt.threads);
  const KineticSpectrum kin = build_kinetic_spectrum(layout);
  const std::uint64_t dim_e = pot.electronic_dim;
  const std::uint64_t n_geom = pot.geometry_dim;

  int qubits = 0;
  while ((std::uint64_t{1} << qubits) < dim_e * n_geom) ++qubits;
  if ((std::uint64_t{1} << qubits) != dim_e * n_geom)
    throw validation_error("run_vite: composite dimension is not a power of two");

  // Exact spectra per candidate (dense blocks; these systems are small).
  std::vector<SpectralDecomposition> blocks(n_geom);
  parallel_for(n_geom, opt.threads, [&](std::uint64_t j0, std::uint64_t j1) {
    for (std::uint64_t j = j0; j < j1; ++j)
      blocks[j] = diagonalize(dense_hamiltonian(layout, pot.column(j), opt.dense_cap));
  });
  ViteResult result;
  result.exact_energies.resize(n_geom);
  for (std::uint64_t j = 0; j < n_geom; ++j) result.exact_energies[j] = blocks[j].eigenvalues(0);
  const auto best =
      std::min_element(result.exact_energies.begin(), result.exact_energies.end());
  result.exact_energy = *best;
  result.tracked_geometry = opt.track_geometry >= 0
                                ? opt.track_geometry
                                : static_cast<int>(best - result.exact_energies.begin());
  if (result.tracked_geometry >= static_cast<int>(n_geom))
    throw bounds_error("run_vite: tracked geometry out of range");
  result.seed = opt.seed;

  ViteAnsatz ansatz = ViteAnsatz::uniform_axis(qubits, opt.depth, opt.axis);
  result.ansatz = ansatz;
  Eigen::VectorXd theta(ansatz.n_params());
  std::mt19937_64 rng(opt.seed);
  for (Eigen::Index i = 0; i < theta.size(); ++i)
    theta(i) = 2.0 * M_PI * canonical_uniform(rng);

  const int n_track = std::min<int>(opt.track_states, static_cast<int>(dim_e));
  const auto& tracked = blocks[static_cast<std::uint64_t>(result.tracked_geometry)];

  auto record = [&](const StateVec& phi) {
    ViteStepRecord rec;
    rec.weights.resize(n_geom);
    for (std::uint64_t j = 0; j < n_geom; ++j) {
      double acc = 0.0;
      for (std::uint64_t k = 0; k < dim_e; ++k)
        acc += std::norm(phi(static_cast<Eigen::Index>(j * dim_e + k)));
      rec.weights[j] = acc;
    }
    StateVec h_phi(phi.size());
    apply_hamiltonian_composite(layout, pot, kin, phi.data(), h_phi.data());
    rec.energy = phi.dot(h_phi).real();
    rec.energy_error = rec.energy - result.exact_energy;
    rec.component_weights.resize(static_cast<std::size_t>(n_track));
    const auto j_star = static_cast<std::uint64_t>(result.tracked_geometry);
    const double w_block = rec.weights[j_star];
    for (int i = 0; i < n_track; ++i) {
      complexd overlap(0.0, 0.0);
      for (std::uint64_t k = 0; k < dim_e; ++k)
        overlap += tracked.eigenvectors(static_cast<Eigen::Index>(k), i) *
                   phi(static_cast<Eigen::Index>(j_star * dim_e + k));
      rec.component_weights[static_cast<std::size_t>(i)] =
          w_block > 1e-300 ? std::norm(overlap) / w_block : 0.0;
    }
    result.trajectory.push_back(std::move(rec));
  };

  auto apply_h = [&](const complexd* in, complexd* out) {
    apply_hamiltonian_composite(layout, pot, kin, in, out);
  };

  StateVec phi = apply_ansatz(ansatz, theta);
  record(phi);
  for (int s = 0; s < opt.steps; ++s) {
    const Eigen::MatrixXcd grads = all_gradient_states(ansatz, theta);
    const Eigen::MatrixXd m = m_matrix_from(grads);
    StateVec h_phi(phi.size());
    apply_h(phi.data(), h_phi.data());
    const Eigen::VectorXd v = v_vector_from(grads, h_phi);
    theta = vite_update(theta, m, v, opt.dtau, opt.lambda_reg);
    phi = apply_ansatz(ansatz, theta);
    record(phi);
  }
  result.theta_final = theta;
  return result;
}

/// Ancilla-probe readout of Im <0| W^dag V U |0> for a diagonal V.
/// P_{s,k} follows the interference of (W + (-1)^s e^{i phi} U)/2.
struct AncillaProbe {
  Eigen::MatrixXd probabilities; // 2 x dim, rows are ancilla outcomes s = 0, 1
  double recovered = 0.0;        // sum_{s,k} (-1)^s V_kk P_{s,k}
  double phi = 0.0;
};

inline AncillaProbe ancilla_probabilities(const StateVec& w_state, const StateVec& u_state,
                                          double phi, const Eigen::VectorXd& v_diag) {
  if (w_state.size() != u_state.size() || v_diag.size() != w_state.size())
    throw validation_error("ancilla_probabilities: dimension mismatch");
  const Eigen::Index dim = w_state.size();
  AncillaProbe probe;
  probe.phi = phi;
  probe.probabilities.resize(2, dim);
  const double c = std::cos(phi), s = std::sin(phi);
  double recovered = 0.0;
  for (Eigen::Index k = 0; k < dim; ++k) {
    const complexd v_k = std::conj(w_state(k)) * u_state(k);
    const double base = 0.25 * std::norm(w_state(k)) + 0.25 * std::norm(u_state(k));
    const double interference = 0.5 * (c * v_k.real() - s * v_k.imag());
    probe.probabilities(0, k) = base + interference;
    probe.probabilities(1, k) = base - interference;
    recovered += v_diag(k) * 2.0 * interference;
  }
  probe.recovered = recovered;
  return probe;
}

} // namespace qgopt
