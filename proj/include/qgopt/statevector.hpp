#pragma once

#include "qgopt/common.hpp"

#include <Eigen/Dense>

#include <bit>
#include <vector>

namespace qgopt {

using StateVec = Eigen::VectorXcd;

inline StateVec basis_zero_state(int n_qubits) {
  if (n_qubits < 1 || n_qubits > 24) throw validation_error("basis_zero_state: bad qubit count");
  StateVec v = StateVec::Zero(Eigen::Index{1} << n_qubits);
  v(0) = complexd(1.0, 0.0);
  return v;
}

/// R_mu(theta) = exp(-i theta sigma_mu / 2) on one qubit; qubit q is bit q of
/// the basis index.
inline void apply_rotation(StateVec& psi, int qubit, char axis, double theta) {
  const auto mask = std::uint64_t{1} << qubit;
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const auto dim = static_cast<std::uint64_t>(psi.size());
  switch (axis) {
  case 'y':
    for (std::uint64_t i = 0; i < dim; ++i) {
      if (i & mask) continue;
      const auto j = static_cast<Eigen::Index>(i | mask);
      const complexd a0 = psi(static_cast<Eigen::Index>(i)), a1 = psi(j);
      psi(static_cast<Eigen::Index>(i)) = c * a0 - s * a1;
      psi(j) = s * a0 + c * a1;
    }
    break;
  case 'x':
    for (std::uint64_t i = 0; i < dim; ++i) {
      if (i & mask) continue;
      const auto j = static_cast<Eigen::Index>(i | mask);
      const complexd a0 = psi(static_cast<Eigen::Index>(i)), a1 = psi(j);
      psi(static_cast<Eigen::Index>(i)) = c * a0 - complexd(0, s) * a1;
      psi(j) = -complexd(0, s) * a0 + c * a1;
    }
    break;
  case 'z': {
    const complexd p0 = std::polar(1.0, -theta / 2.0), p1 = std::polar(1.0, theta / 2.0);
    for (std::uint64_t i = 0; i < dim; ++i)
      psi(static_cast<Eigen::Index>(i)) *= (i & mask) ? p1 : p0;
    break;
  }
  default:
    throw validation_error("apply_rotation: axis must be x, y or z");
  }
}

/// Multiplies by the bare Pauli sigma_mu on one qubit.
inline void apply_pauli(StateVec& psi, int qubit, char axis) {
  const auto mask = std::uint64_t{1} << qubit;
  const auto dim = static_cast<std::uint64_t>(psi.size());
  switch (axis) {
  case 'y':
    for (std::uint64_t i = 0; i < dim; ++i) {
      if (i & mask) continue;
      const auto j = static_cast<Eigen::Index>(i | mask);
      const complexd a0 = psi(static_cast<Eigen::Index>(i)), a1 = psi(j);
      psi(static_cast<Eigen::Index>(i)) = complexd(0, -1) * a1;
      psi(j) = complexd(0, 1) * a0;
    }
    break;
  case 'x':
    for (std::uint64_t i = 0; i < dim; ++i) {
      if (i & mask) continue;
      const auto j = static_cast<Eigen::Index>(i | mask);
      std::swap(psi(static_cast<Eigen::Index>(i)), psi(j));
    }
    break;
  case 'z':
    for (std::uint64_t i = 0; i < dim; ++i)
      if (i & mask) psi(static_cast<Eigen::Index>(i)) = -psi(static_cast<Eigen::Index>(i));
    break;
  default:
    throw validation_error("apply_pauli: axis must be x, y or z");
  }
}

/// Sign diagonal of the all-pairs CZ entangler: CZ on every unordered qubit
/// pair multiplies basis state k by (-1)^{C(popcount(k), 2)}.
inline std::vector<double> full_cz_signs(int n_qubits) {
  const std::uint64_t dim = std::uint64_t{1} << n_qubits;
  std::vector<double> sign(dim);
  for (std::uint64_t k = 0; k < dim; ++k) {
    const auto p = static_cast<std::uint64_t>(std::popcount(k));
    sign[k] = (p * (p - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
  }
  return sign;
}

inline void apply_diagonal_signs(StateVec& psi, const std::vector<double>& sign) {
  for (Eigen::Index i = 0; i < psi.size(); ++i) psi(i) *= sign[static_cast<std::size_t>(i)];
}

} // namespace qgopt
