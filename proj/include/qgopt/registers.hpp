#pragma once

#include "qgopt/common.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qgopt {

// Largest register size we are willing to address as a flat array.
inline constexpr int kMaxAddressableBits = 40;

/// Discretization of the electronic register: a periodic cell of edge
/// `cell_length` sampled by 2^n_qe points per direction per electron.
/// Grid coordinates are k * dx for k in [0, 2^n_qe).
struct RegisterLayout {
  int n_e = 1;
  int spatial_dim = 1;
  int n_qe = 1;
  double cell_length = 1.0;

  int points_per_axis() const { return 1 << n_qe; }
  int axes() const { return n_e * spatial_dim; }
  double dx() const { return cell_length / points_per_axis(); }
  double volume_element() const { return std::pow(dx(), spatial_dim); }
  double coordinate(int k) const { return k * dx(); }

  std::uint64_t electronic_dimension() const {
    return std::uint64_t{1} << (static_cast<unsigned>(n_qe) * static_cast<unsigned>(axes()));
  }
};

inline RegisterLayout build_layout(int n_e, int spatial_dim, int n_qe, double cell_length) {
  if (n_e < 1) throw validation_error("build_layout: n_e must be >= 1");
  if (spatial_dim < 1 || spatial_dim > 3)
    throw validation_error("build_layout: spatial_dim must be 1, 2 or 3");
  if (n_qe < 1) throw validation_error("build_layout: n_qe must be >= 1");
  if (!(cell_length > 0.0)) throw validation_error("build_layout: cell_length must be > 0");
  long long bits = static_cast<long long>(n_qe) * n_e * spatial_dim;
  if (bits > kMaxAddressableBits)
    throw capacity_error("build_layout: electronic register needs 2^" + std::to_string(bits) +
                         " amplitudes, above the 2^" + std::to_string(kMaxAddressableBits) +
                         " addressable limit");
  return RegisterLayout{n_e, spatial_dim, n_qe, cell_length};
}

/// One searched nuclear coordinate: candidate j maps to
/// base + j * max_displacement / 2^n_qn, j in [0, 2^n_qn).
struct SearchCoordinate {
  int nucleus = 0;
  int axis = 0; // 0 = x, 1 = y, 2 = z
  int n_qn = 1;
  double base = 0.0;
  double max_displacement = 0.0;

  int points() const { return 1 << n_qn; }
  double step() const { return max_displacement / points(); }
  double value(int j) const { return base + j * step(); }
};

/// Candidate-geometry grid: frozen base positions plus searched coordinates.
/// The first entry of `search` varies fastest in the flattened geometry index.
struct GeometryGrid {
  int spatial_dim = 3;
  std::vector<std::array<double, 3>> base_positions;
  std::vector<double> charges;
  std::vector<SearchCoordinate> search;

  int n_nucl() const { return static_cast<int>(base_positions.size()); }

  std::uint64_t geometry_count() const {
    std::uint64_t n = 1;
    for (const auto& c : search) n *= static_cast<std::uint64_t>(c.points());
    return n;
  }

  void validate() const {
    if (base_positions.empty()) throw validation_error("GeometryGrid: needs at least one nucleus");
    if (charges.size() != base_positions.size())
      throw validation_error("GeometryGrid: charges/positions size mismatch");
    long long bits = 0;
    for (const auto& c : search) {
      if (c.nucleus < 0 || c.nucleus >= n_nucl())
        throw validation_error("GeometryGrid: search coordinate references nucleus " +
                               std::to_string(c.nucleus) + " of " + std::to_string(n_nucl()));
      if (c.axis < 0 || c.axis >= spatial_dim)
        throw validation_error("GeometryGrid: search axis out of range for spatial_dim");
      if (c.n_qn < 1) throw validation_error("GeometryGrid: n_qn must be >= 1");
      bits += c.n_qn;
    }
    if (bits > kMaxAddressableBits)
      throw capacity_error("GeometryGrid: 2^" + std::to_string(bits) +
                           " candidate geometries exceed the addressable limit");
  }

  std::vector<int> unflatten_geometry(std::uint64_t flat) const {
    if (flat >= geometry_count())
      throw bounds_error("unflatten_geometry: index " + std::to_string(flat) + " out of range");
    std::vector<int> J(search.size());
    for (std::size_t c = 0; c < search.size(); ++c) {
      auto p = static_cast<std::uint64_t>(search[c].points());
      J[c] = static_cast<int>(flat % p);
      flat /= p;
    }
    return J;
  }

  std::uint64_t flatten_geometry(const std::vector<int>& J) const {
    if (J.size() != search.size())
      throw validation_error("flatten_geometry: expected " + std::to_string(search.size()) +
                             " coordinate indices");
    std::uint64_t flat = 0;
    for (std::size_t c = search.size(); c-- > 0;) {
      if (J[c] < 0 || J[c] >= search[c].points())
        throw bounds_error("flatten_geometry: component " + std::to_string(c) + " out of range");
      flat = flat * static_cast<std::uint64_t>(search[c].points()) + static_cast<std::uint64_t>(J[c]);
    }
    return flat;
  }
};

/// Nuclear positions for candidate J; frozen coordinates pass through unchanged.
inline std::vector<std::array<double, 3>> geometry_coordinates(const std::vector<int>& J,
                                                               const GeometryGrid& grid) {
  if (J.size() != grid.search.size())
    throw validation_error("geometry_coordinates: expected " + std::to_string(grid.search.size()) +
                           " coordinate indices");
  auto pos = grid.base_positions;
  for (std::size_t c = 0; c < grid.search.size(); ++c) {
    const auto& sc = grid.search[c];
    if (J[c] < 0 || J[c] >= sc.points())
      throw bounds_error("geometry_coordinates: index " + std::to_string(J[c]) +
                         " out of [0, " + std::to_string(sc.points()) + ")");
    pos[sc.nucleus][sc.axis] = sc.value(J[c]);
  }
  return pos;
}

inline std::vector<std::array<double, 3>> geometry_coordinates(std::uint64_t j_flat,
                                                               const GeometryGrid& grid) {
  return geometry_coordinates(grid.unflatten_geometry(j_flat), grid);
}

/// Row-major flattening of the composite (K, J) space. The electronic index K
/// varies fastest, so the amplitudes of one geometry form a contiguous block.
/// Within K, electron 0's x component is the fastest axis.
struct CompositeIndexer {
  RegisterLayout layout;
  GeometryGrid grid;

  CompositeIndexer(RegisterLayout lay, GeometryGrid g) : layout(lay), grid(std::move(g)) {
    grid.validate();
    std::uint64_t total_bits = static_cast<std::uint64_t>(layout.n_qe) * layout.axes();
    for (const auto& c : grid.search) total_bits += static_cast<std::uint64_t>(c.n_qn);
    if (total_bits > kMaxAddressableBits)
      throw capacity_error("CompositeIndexer: composite space needs 2^" +
                           std::to_string(total_bits) + " amplitudes");
  }

  std::uint64_t electronic_dim() const { return layout.electronic_dimension(); }
  std::uint64_t geometry_dim() const { return grid.geometry_count(); }
  std::uint64_t total_dim() const { return electronic_dim() * geometry_dim(); }

  std::uint64_t flatten_electronic(const std::vector<int>& K) const {
    if (static_cast<int>(K.size()) != layout.axes())
      throw validation_error("flatten_electronic: expected " + std::to_string(layout.axes()) +
                             " grid integers");
    const int n = layout.points_per_axis();
    std::uint64_t flat = 0;
    for (std::size_t a = K.size(); a-- > 0;) {
      if (K[a] < 0 || K[a] >= n) throw bounds_error("flatten_electronic: component out of range");
      flat = flat * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(K[a]);
    }
    return flat;
  }

  std::vector<int> unflatten_electronic(std::uint64_t flat) const {
    if (flat >= electronic_dim()) throw bounds_error("unflatten_electronic: index out of range");
    const auto n = static_cast<std::uint64_t>(layout.points_per_axis());
    std::vector<int> K(layout.axes());
    for (int a = 0; a < layout.axes(); ++a) {
      K[a] = static_cast<int>(flat % n);
      flat /= n;
    }
    return K;
  }

  std::uint64_t flatten(const std::vector<int>& K, const std::vector<int>& J) const {
    return grid.flatten_geometry(J) * electronic_dim() + flatten_electronic(K);
  }

  std::pair<std::vector<int>, std::vector<int>> unflatten(std::uint64_t flat) const {
    if (flat >= total_dim()) throw bounds_error("unflatten: index out of range");
    std::uint64_t k = flat % electronic_dim();
    std::uint64_t j = flat / electronic_dim();
    return {unflatten_electronic(k), grid.unflatten_geometry(j)};
  }
};

} // namespace qgopt
