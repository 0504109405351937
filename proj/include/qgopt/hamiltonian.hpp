#pragma once

#include "qgopt/common.hpp"
#include "qgopt/fft.hpp"
#include "qgopt/potentials.hpp"
#include "qgopt/registers.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace qgopt {

/// The pairwise pieces of the composite Hamiltonian. `en` holds one potential
/// per nucleus, `nn` one per unordered nucleus pair in (0,1),(0,2),(1,2),...
/// order. Charge prefactors come from the geometry grid.
struct PotentialTerms {
  std::optional<PairPotential> ee;
  std::vector<PairPotential> en;
  std::vector<PairPotential> nn;
  ExternalField ext;

  static std::size_t pair_index(int nu, int nu_prime) {
    if (nu > nu_prime) std::swap(nu, nu_prime);
    return static_cast<std::size_t>(nu_prime) * (nu_prime - 1) / 2 + nu;
  }

  void validate(const RegisterLayout& layout, const GeometryGrid& grid) const {
    if (layout.n_e >= 2 && !ee)
      throw validation_error("PotentialTerms: ee potential required for n_e >= 2");
    if (static_cast<int>(en.size()) != grid.n_nucl())
      throw validation_error("PotentialTerms: need one en potential per nucleus (" +
                             std::to_string(grid.n_nucl()) + ")");
    const auto n_pairs = static_cast<std::size_t>(grid.n_nucl()) * (grid.n_nucl() - 1) / 2;
    if (nn.size() != n_pairs)
      throw validation_error("PotentialTerms: need " + std::to_string(n_pairs) +
                             " nn pair potentials");
  }
};

/// Position-diagonal part of the composite Hamiltonian over flattened (K, J),
/// kept term by term. total = ee + en + ext (+ nn, constant in K per J).
struct PotentialDiagonal {
  std::uint64_t electronic_dim = 0;
  std::uint64_t geometry_dim = 0;
  std::vector<double> total;            // electronic_dim * geometry_dim
  std::vector<double> ee;               // electronic_dim (J-independent)
  std::vector<double> ext;              // electronic_dim (J-independent)
  std::vector<double> en;               // electronic_dim * geometry_dim
  std::vector<double> nn_per_geometry;  // geometry_dim

  const double* column(std::uint64_t j) const { return total.data() + j * electronic_dim; }
  double min_total() const {
    double m = total.front();
    for (double v : total) m = std::min(m, v);
    return m;
  }
};

namespace detail {

inline double grid_distance(const double* a, const double* b, int dim) {
  double acc = 0.0;
  for (int d = 0; d < dim; ++d) {
    double diff = a[d] - b[d];
    acc += diff * diff;
  }
  return std::sqrt(acc);
}

// Decodes electronic flat index into per-electron positions (open-boundary
// Euclidean coordinates; interaction distances are not minimum-imaged).
struct ElectronDecoder {
  const RegisterLayout& layout;
  explicit ElectronDecoder(const RegisterLayout& l) : layout(l) {}
  void positions(std::uint64_t k_flat, double* pos /* n_e*dim */) const {
    const auto n = static_cast<std::uint64_t>(layout.points_per_axis());
    for (int a = 0; a < layout.axes(); ++a) {
      pos[a] = layout.coordinate(static_cast<int>(k_flat % n));
      k_flat /= n;
    }
  }
};

} // namespace detail

inline PotentialDiagonal build_potential_diagonal(const RegisterLayout& layout,
                                                  const GeometryGrid& grid,
                                                  const PotentialTerms& terms, int threads = 1) {
  grid.validate();
  terms.validate(layout, grid);
  if (grid.spatial_dim != layout.spatial_dim)
    throw validation_error("build_potential_diagonal: layout/grid spatial_dim mismatch");

  PotentialDiagonal out;
  out.electronic_dim = layout.electronic_dimension();
  out.geometry_dim = grid.geometry_count();
  const std::uint64_t dim_e = out.electronic_dim;
  const std::uint64_t n_geom = out.geometry_dim;
  out.total.resize(dim_e * n_geom);
  out.ee.assign(dim_e, 0.0);
  out.ext.assign(dim_e, 0.0);
  out.en.resize(dim_e * n_geom);
  out.nn_per_geometry.resize(n_geom);

  const int dim = layout.spatial_dim;
  const detail::ElectronDecoder dec(layout);

  // e-e and external terms do not depend on the geometry index.
  parallel_for(dim_e, threads, [&](std::uint64_t k0, std::uint64_t k1) {
    std::vector<double> pos(static_cast<std::size_t>(layout.axes()));
    for (std::uint64_t k = k0; k < k1; ++k) {
      dec.positions(k, pos.data());
      double vee = 0.0;
      if (layout.n_e >= 2) {
        for (int l = 0; l < layout.n_e; ++l)
          for (int lp = l + 1; lp < layout.n_e; ++lp)
            vee += (*terms.ee)(detail::grid_distance(&pos[l * dim], &pos[lp * dim], dim));
      }
      out.ee[k] = vee;
      if (!terms.ext.is_zero()) {
        double vx = 0.0;
        for (int l = 0; l < layout.n_e; ++l) vx += terms.ext(&pos[l * dim], dim);
        out.ext[k] = vx;
      }
    }
  });

  // Per-geometry: nuclear repulsion constant and the e-n attraction, built
  // from a single-electron table then summed over electrons.
  const auto n_single = static_cast<std::uint64_t>(
      std::pow(static_cast<double>(layout.points_per_axis()), dim) + 0.5);
  parallel_for(n_geom, threads, [&](std::uint64_t j0, std::uint64_t j1) {
    std::vector<double> single(n_single);
    std::vector<double> pos(static_cast<std::size_t>(dim));
    for (std::uint64_t j = j0; j < j1; ++j) {
      const auto nuclei = geometry_coordinates(j, grid);
      double enn = 0.0;
      for (int nu = 0; nu < grid.n_nucl(); ++nu)
        for (int np = nu + 1; np < grid.n_nucl(); ++np) {
          const double zz = grid.charges[nu] * grid.charges[np];
          if (zz == 0.0) continue;
          enn += zz * terms.nn[PotentialTerms::pair_index(nu, np)](
                          detail::grid_distance(nuclei[nu].data(), nuclei[np].data(), dim));
        }
      out.nn_per_geometry[j] = enn;

      const auto n = static_cast<std::uint64_t>(layout.points_per_axis());
      for (std::uint64_t g = 0; g < n_single; ++g) {
        std::uint64_t rest = g;
        for (int d = 0; d < dim; ++d) {
          pos[d] = layout.coordinate(static_cast<int>(rest % n));
          rest /= n;
        }
        double ven = 0.0;
        for (int nu = 0; nu < grid.n_nucl(); ++nu) {
          if (grid.charges[nu] == 0.0) continue;
          ven -= grid.charges[nu] *
                 terms.en[nu](detail::grid_distance(pos.data(), nuclei[nu].data(), dim));
        }
        single[g] = ven;
      }
      double* en_col = out.en.data() + j * dim_e;
      for (std::uint64_t k = 0; k < dim_e; ++k) {
        std::uint64_t rest = k;
        double acc = 0.0;
        for (int l = 0; l < layout.n_e; ++l) {
          acc += single[rest % n_single];
          rest /= n_single;
        }
        en_col[k] = acc;
      }
      double* col = out.total.data() + j * dim_e;
      for (std::uint64_t k = 0; k < dim_e; ++k) col[k] = out.ee[k] + out.ext[k] + en_col[k] + enn;
    }
  });
  return out;
}

/// Kinetic energies on the momentum grid: sum over electron axes of
/// (2 pi k~ / L)^2 / 2 with centered integer frequencies k~ in [-N/2, N/2).
struct KineticSpectrum {
  std::vector<double> axis_values; // length N, indexed by the FFT bin
  std::vector<double> values;      // length electronic_dim, summed over axes

  double max_value() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, v);
    return m;
  }
};

inline int centered_frequency(int bin, int n) { return bin < n / 2 ? bin : bin - n; }

inline KineticSpectrum build_kinetic_spectrum(const RegisterLayout& layout) {
  KineticSpectrum spec;
  const int n = layout.points_per_axis();
  spec.axis_values.resize(static_cast<std::size_t>(n));
  for (int f = 0; f < n; ++f) {
    double p = 2.0 * M_PI * centered_frequency(f, n) / layout.cell_length;
    spec.axis_values[static_cast<std::size_t>(f)] = 0.5 * p * p;
  }
  const std::uint64_t dim_e = layout.electronic_dimension();
  spec.values.resize(dim_e);
  for (std::uint64_t k = 0; k < dim_e; ++k) {
    std::uint64_t rest = k;
    double acc = 0.0;
    for (int a = 0; a < layout.axes(); ++a) {
      acc += spec.axis_values[static_cast<std::size_t>(rest % static_cast<std::uint64_t>(n))];
      rest /= static_cast<std::uint64_t>(n);
    }
    spec.values[k] = acc;
  }
  return spec;
}

/// Dense single-axis kinetic matrix: the circulant whose spectrum is
/// axis_values, t[(i-j) mod N] with t the inverse DFT of the spectrum.
/// Identical by construction to the split FFT-multiply-inverse path.
inline Eigen::MatrixXd kinetic_axis_matrix(const RegisterLayout& layout) {
  const int n = layout.points_per_axis();
  const auto spec = build_kinetic_spectrum(layout).axis_values;
  std::vector<double> row(static_cast<std::size_t>(n));
  for (int d = 0; d < n; ++d) {
    double acc = 0.0;
    for (int f = 0; f < n; ++f) acc += spec[static_cast<std::size_t>(f)] * std::cos(2.0 * M_PI * f * d / n);
    row[static_cast<std::size_t>(d)] = acc / n;
  }
  Eigen::MatrixXd t(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t(i, j) = row[static_cast<std::size_t>((i - j + n) % n)];
  return t;
}

inline constexpr int kDefaultDenseCap = 8192;

/// Dense electronic Hamiltonian for one candidate geometry, including the
/// nuclear-repulsion constant: H = F^dag diag(T) F + diag(V(., J)).
inline Eigen::MatrixXd dense_hamiltonian(const RegisterLayout& layout,
                                         const double* potential_column,
                                         int dense_cap = kDefaultDenseCap) {
  const std::uint64_t dim_e = layout.electronic_dimension();
  if (dim_e > static_cast<std::uint64_t>(dense_cap))
    throw capacity_error("dense_hamiltonian: dimension " + std::to_string(dim_e) +
                         " exceeds the dense cap " + std::to_string(dense_cap));
  const auto dim = static_cast<Eigen::Index>(dim_e);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  const Eigen::MatrixXd t1 = kinetic_axis_matrix(layout);
  const auto n = static_cast<std::uint64_t>(layout.points_per_axis());
  for (int a = 0; a < layout.axes(); ++a) {
    std::uint64_t stride = 1;
    for (int t = 0; t < a; ++t) stride *= n;
    for (std::uint64_t i = 0; i < dim_e; ++i) {
      const auto ia = static_cast<int>((i / stride) % n);
      const std::uint64_t base = i - static_cast<std::uint64_t>(ia) * stride;
      for (std::uint64_t v = 0; v < n; ++v)
        h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(base + v * stride)) +=
            t1(ia, static_cast<int>(v));
    }
  }
  for (std::uint64_t i = 0; i < dim_e; ++i)
    h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) += potential_column[i];
  return h;
}

inline Eigen::MatrixXd dense_hamiltonian(const RegisterLayout& layout, const GeometryGrid& grid,
                                         std::uint64_t j_flat, const PotentialTerms& terms,
                                         int dense_cap = kDefaultDenseCap) {
  auto pot = build_potential_diagonal(layout, grid, terms);
  if (j_flat >= pot.geometry_dim) throw bounds_error("dense_hamiltonian: geometry index out of range");
  return dense_hamiltonian(layout, pot.column(j_flat), dense_cap);
}

/// out = H in for one electronic block, in the split representation:
/// Fourier-diagonal kinetic plus position-diagonal potential.
inline void apply_hamiltonian(const RegisterLayout& layout, const double* potential_column,
                              const KineticSpectrum& kin, const complexd* in, complexd* out) {
  const std::uint64_t dim_e = layout.electronic_dimension();
  std::vector<complexd> scratch(in, in + dim_e);
  transform_electronic(scratch.data(), layout, 1, true);
  for (std::uint64_t k = 0; k < dim_e; ++k) scratch[k] *= kin.values[k];
  transform_electronic(scratch.data(), layout, 1, false);
  for (std::uint64_t k = 0; k < dim_e; ++k) out[k] = scratch[k] + potential_column[k] * in[k];
}

/// Split-representation H over all geometry blocks of a composite state.
inline void apply_hamiltonian_composite(const RegisterLayout& layout, const PotentialDiagonal& pot,
                                        const KineticSpectrum& kin, const complexd* in,
                                        complexd* out) {
  for (std::uint64_t j = 0; j < pot.geometry_dim; ++j)
    apply_hamiltonian(layout, pot.column(j), kin, in + j * pot.electronic_dim,
                      out + j * pot.electronic_dim);
}

/// <psi|H|psi> via the split representation; `n_blocks` geometry blocks share
/// the kinetic spectrum, each with its own potential column.
inline double energy_expectation(const RegisterLayout& layout, const PotentialDiagonal& pot,
                                 const KineticSpectrum& kin, const complexd* psi) {
  const std::uint64_t dim_e = pot.electronic_dim;
  double acc = 0.0;
  std::vector<complexd> scratch(dim_e);
  for (std::uint64_t j = 0; j < pot.geometry_dim; ++j) {
    const complexd* block = psi + j * dim_e;
    const double* col = pot.column(j);
    std::copy(block, block + dim_e, scratch.begin());
    transform_electronic(scratch.data(), layout, 1, true);
    for (std::uint64_t k = 0; k < dim_e; ++k) acc += kin.values[k] * std::norm(scratch[k]);
    for (std::uint64_t k = 0; k < dim_e; ++k) acc += col[k] * std::norm(block[k]);
  }
  return acc;
}

/// One-particle density over the single-electron grid, n_e times the marginal
/// of |psi|^2 divided by the volume element; sums times dV to n_e.
template <class Scalar>
Eigen::VectorXd electron_density(const Scalar* amplitudes, const RegisterLayout& layout) {
  const auto n_single = static_cast<std::uint64_t>(
      std::pow(static_cast<double>(layout.points_per_axis()), layout.spatial_dim) + 0.5);
  Eigen::VectorXd density = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_single));
  const std::uint64_t dim_e = layout.electronic_dimension();
  for (std::uint64_t k = 0; k < dim_e; ++k) {
    const auto g = static_cast<Eigen::Index>(k % n_single);
    density(g) += std::norm(complexd(amplitudes[k]));
  }
  density *= layout.n_e / layout.volume_element();
  return density;
}

} // namespace qgopt
