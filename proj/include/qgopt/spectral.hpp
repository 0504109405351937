#pragma once

#include "qgopt/common.hpp"
#include "qgopt/hamiltonian.hpp"
#include "qgopt/registers.hpp"

#include <Eigen/Dense>
#include <lapacke.h>

#include <algorithm>
#include <string>
#include <vector>

namespace qgopt {

/// Eigen-decomposition of one candidate-geometry Hamiltonian. Eigenvalues
/// ascend; eigenvectors are columns over the electronic grid. For two-electron
/// systems `exchange_parity` carries +1 (symmetric) / -1 (antisymmetric),
/// 0 when the label is not defined.
struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
  std::vector<int> exchange_parity;
};

namespace detail {

inline void require_symmetric(const Eigen::MatrixXd& h) {
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  const double asym = (h - h.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * scale)
    throw validation_error("diagonalize: input matrix is not symmetric (max asymmetry " +
                           std::to_string(asym) + ")");
}

inline void lapack_check(int info, const char* what) {
  if (info != 0)
    throw numerical_error(std::string(what) + " failed with LAPACK info = " + std::to_string(info));
}

} // namespace detail

/// Full symmetric eigendecomposition (divide and conquer).
inline SpectralDecomposition diagonalize(const Eigen::MatrixXd& h) {
  detail::require_symmetric(h);
  const auto n = static_cast<lapack_int>(h.rows());
  SpectralDecomposition out;
  out.eigenvectors = h;
  out.eigenvalues.resize(n);
  detail::lapack_check(LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, out.eigenvectors.data(), n,
                                      out.eigenvalues.data()),
                       "dsyevd");
  return out;
}

/// Lowest n_lowest eigenpairs only.
inline SpectralDecomposition diagonalize_lowest(const Eigen::MatrixXd& h, int n_lowest) {
  detail::require_symmetric(h);
  const auto n = static_cast<lapack_int>(h.rows());
  if (n_lowest < 1 || n_lowest > n)
    throw validation_error("diagonalize_lowest: n_lowest out of range");
  Eigen::MatrixXd a = h;
  SpectralDecomposition out;
  out.eigenvalues.resize(n_lowest);
  out.eigenvectors.resize(n, n_lowest);
  std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(std::max(1, n_lowest)));
  lapack_int found = 0;
  detail::lapack_check(LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'V', 'I', 'L', n, a.data(), n, 0.0, 0.0, 1,
                                      n_lowest, 0.0, &found, out.eigenvalues.data(),
                                      out.eigenvectors.data(), n, isuppz.data()),
                       "dsyevr");
  if (found != n_lowest) throw numerical_error("diagonalize_lowest: eigensolver returned fewer pairs");
  return out;
}

/// Expectation of the electron-swap permutation per eigenvector, rounded to
/// +-1; 0 if the state is not close to a parity eigenstate (degenerate pair).
inline std::vector<int> exchange_parity_labels(const Eigen::MatrixXd& vectors,
                                               const RegisterLayout& layout) {
  if (layout.n_e != 2) return {};
  const auto n_single = static_cast<std::uint64_t>(
      std::pow(static_cast<double>(layout.points_per_axis()), layout.spatial_dim) + 0.5);
  std::vector<int> labels(static_cast<std::size_t>(vectors.cols()), 0);
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    double acc = 0.0;
    for (std::uint64_t k = 0; k < static_cast<std::uint64_t>(vectors.rows()); ++k) {
      const std::uint64_t a = k % n_single;
      const std::uint64_t b = k / n_single;
      acc += vectors(static_cast<Eigen::Index>(k), c) *
             vectors(static_cast<Eigen::Index>(b + a * n_single), c);
    }
    if (std::abs(acc - 1.0) < 1e-6)
      labels[static_cast<std::size_t>(c)] = 1;
    else if (std::abs(acc + 1.0) < 1e-6)
      labels[static_cast<std::size_t>(c)] = -1;
  }
  return labels;
}

inline SpectralDecomposition diagonalize(const Eigen::MatrixXd& h, const RegisterLayout& layout) {
  auto out = diagonalize(h);
  out.exchange_parity = exchange_parity_labels(out.eigenvectors, layout);
  return out;
}

// ---------------------------------------------------------------------------
// Exchange-parity sector decomposition for two electrons in one dimension.
// The swap-adapted basis splits H into a symmetric block over pairs (a <= b)
// and an antisymmetric block over pairs (a < b); diagonalizing the two blocks
// is ~4x cheaper than the full grid and yields exact parity labels.
// ---------------------------------------------------------------------------

struct TwoElectronSpectrum {
  int n = 0; // grid points per axis
  Eigen::VectorXd evals_sym, evals_anti;
  Eigen::MatrixXd evecs_sym, evecs_anti; // columns, in the sector bases

  static std::uint64_t sym_index(int a, int b, int n) {
    // pairs (a <= b) ordered by b then a: (0,0),(0,1),(1,1),(0,2),...
    return static_cast<std::uint64_t>(b) * (b + 1) / 2 + a;
  }
  static std::uint64_t anti_index(int a, int b, int n) {
    return static_cast<std::uint64_t>(b) * (b - 1) / 2 + a; // pairs (a < b)
  }
  std::uint64_t sym_dim() const { return static_cast<std::uint64_t>(n) * (n + 1) / 2; }
  std::uint64_t anti_dim() const { return static_cast<std::uint64_t>(n) * (n - 1) / 2; }

  /// Projects a full-grid vector onto a sector's coefficient basis.
  template <class Scalar>
  Eigen::VectorX<Scalar> project(const Scalar* full, bool symmetric) const {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    if (symmetric) {
      Eigen::VectorX<Scalar> out(static_cast<Eigen::Index>(sym_dim()));
      for (int b = 0; b < n; ++b)
        for (int a = 0; a <= b; ++a) {
          const Scalar lo = full[a + static_cast<std::uint64_t>(b) * n];
          const Scalar hi = full[b + static_cast<std::uint64_t>(a) * n];
          out(static_cast<Eigen::Index>(sym_index(a, b, n))) =
              (a == b) ? lo : (lo + hi) * inv_sqrt2;
        }
      return out;
    }
    Eigen::VectorX<Scalar> out(static_cast<Eigen::Index>(anti_dim()));
    for (int b = 0; b < n; ++b)
      for (int a = 0; a < b; ++a)
        out(static_cast<Eigen::Index>(anti_index(a, b, n))) =
            (full[a + static_cast<std::uint64_t>(b) * n] -
             full[b + static_cast<std::uint64_t>(a) * n]) *
            inv_sqrt2;
    return out;
  }

  /// Expands a sector eigenvector (by column) back to the full grid.
  Eigen::VectorXd expand(const Eigen::MatrixXd& evecs, Eigen::Index col, bool symmetric) const {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Eigen::VectorXd full = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n) * n);
    for (int b = 0; b < n; ++b)
      for (int a = 0; a <= (symmetric ? b : b - 1); ++a) {
        const auto idx = static_cast<Eigen::Index>(symmetric ? sym_index(a, b, n)
                                                             : anti_index(a, b, n));
        const double v = evecs(idx, col);
        if (symmetric && a == b) {
          full(a + static_cast<Eigen::Index>(b) * n) = v;
        } else {
          full(a + static_cast<Eigen::Index>(b) * n) = v * inv_sqrt2;
          full(b + static_cast<Eigen::Index>(a) * n) = (symmetric ? v : -v) * inv_sqrt2;
        }
      }
    return full;
  }

  double ground_energy() const {
    double e = evals_sym.size() ? evals_sym(0) : std::numeric_limits<double>::infinity();
    if (evals_anti.size()) e = std::min(e, evals_anti(0));
    return e;
  }

  /// Lowest overall eigenvector on the full grid, with its parity.
  Eigen::VectorXd ground_state_full(int& parity) const {
    const bool sym = !evals_anti.size() || (evals_sym.size() && evals_sym(0) <= evals_anti(0));
    parity = sym ? 1 : -1;
    return expand(sym ? evecs_sym : evecs_anti, 0, sym);
  }

  /// Merged ascending eigenvalues with parity labels (no expansion).
  void merged_levels(Eigen::VectorXd& evals, std::vector<int>& parity) const {
    const auto total = evals_sym.size() + evals_anti.size();
    evals.resize(total);
    parity.resize(static_cast<std::size_t>(total));
    Eigen::Index i = 0, j = 0, k = 0;
    while (i < evals_sym.size() || j < evals_anti.size()) {
      const bool take_sym = j >= evals_anti.size() ||
                            (i < evals_sym.size() && evals_sym(i) <= evals_anti(j));
      if (take_sym) {
        evals(k) = evals_sym(i++);
        parity[static_cast<std::size_t>(k++)] = 1;
      } else {
        evals(k) = evals_anti(j++);
        parity[static_cast<std::size_t>(k++)] = -1;
      }
    }
  }
};

namespace detail {

inline Eigen::MatrixXd sector_matrix(const Eigen::MatrixXd& t1, const double* pot_column, int n,
                                     bool symmetric) {
  const auto dim = static_cast<Eigen::Index>(
      symmetric ? static_cast<std::uint64_t>(n) * (n + 1) / 2
                : static_cast<std::uint64_t>(n) * (n - 1) / 2);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  auto pot = [&](int a, int b) { return pot_column[a + static_cast<std::uint64_t>(b) * n]; };

  if (symmetric) {
    // u_ab = N_ab (|ab> + |ba>), N = 1/sqrt(2) for a<b, |aa> for a=b.
    for (int b = 0; b < n; ++b)
      for (int a = 0; a <= b; ++a) {
        const auto row = static_cast<Eigen::Index>(TwoElectronSpectrum::sym_index(a, b, n));
        const double n_ab = (a == b) ? 0.5 : 1.0 / std::sqrt(2.0);
        for (int d = 0; d < n; ++d)
          for (int c = 0; c <= d; ++c) {
            const auto col = static_cast<Eigen::Index>(TwoElectronSpectrum::sym_index(c, d, n));
            if (col > row) continue;
            const double n_cd = (c == d) ? 0.5 : 1.0 / std::sqrt(2.0);
            double f = 0.0;
            if (b == d) f += t1(a, c);
            if (a == c) f += t1(b, d);
            if (b == c) f += t1(a, d);
            if (a == d) f += t1(b, c);
            if (a == c && b == d) f += pot(a, b);
            if (a == d && b == c) f += pot(a, b);
            const double val = 2.0 * n_ab * n_cd * f;
            h(row, col) = val;
            h(col, row) = val;
          }
      }
  } else {
    // u_ab = (|ab> - |ba>)/sqrt(2) for a < b.
    for (int b = 0; b < n; ++b)
      for (int a = 0; a < b; ++a) {
        const auto row = static_cast<Eigen::Index>(TwoElectronSpectrum::anti_index(a, b, n));
        for (int d = 0; d < n; ++d)
          for (int c = 0; c < d; ++c) {
            const auto col = static_cast<Eigen::Index>(TwoElectronSpectrum::anti_index(c, d, n));
            if (col > row) continue;
            double f = 0.0;
            if (b == d) f += t1(a, c);
            if (a == c) f += t1(b, d);
            if (b == c) f -= t1(a, d);
            if (a == d) f -= t1(b, c);
            if (a == c && b == d) f += pot(a, b);
            if (a == d && b == c) f -= pot(a, b);
            h(row, col) = f;
            h(col, row) = f;
          }
      }
  }
  return h;
}

} // namespace detail

/// Sector-split decomposition of a two-electron 1D Hamiltonian given its
/// potential column (including the nuclear constant). n_lowest < 0 keeps the
/// full spectrum of both sectors.
inline TwoElectronSpectrum diagonalize_two_electron_1d(const RegisterLayout& layout,
                                                       const double* pot_column,
                                                       int n_lowest = -1) {
  if (layout.n_e != 2 || layout.spatial_dim != 1)
    throw validation_error("diagonalize_two_electron_1d: requires n_e = 2 in one dimension");
  TwoElectronSpectrum out;
  out.n = layout.points_per_axis();
  const Eigen::MatrixXd t1 = kinetic_axis_matrix(layout);
  for (bool symmetric : {true, false}) {
    Eigen::MatrixXd block = detail::sector_matrix(t1, pot_column, out.n, symmetric);
    SpectralDecomposition dec =
        n_lowest < 0 ? diagonalize(block)
                     : diagonalize_lowest(block, std::min<int>(n_lowest,
                                                               static_cast<int>(block.rows())));
    if (symmetric) {
      out.evals_sym = std::move(dec.eigenvalues);
      out.evecs_sym = std::move(dec.eigenvectors);
    } else {
      out.evals_anti = std::move(dec.eigenvalues);
      out.evecs_anti = std::move(dec.eigenvectors);
    }
  }
  return out;
}

} // namespace qgopt
