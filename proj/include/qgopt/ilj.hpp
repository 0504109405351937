#pragma once

#include "qgopt/common.hpp"

#include <array>
#include <cmath>
#include <map>
#include <string>
#include <vector>

namespace qgopt {

using Vec3 = std::array<double, 3>;

inline double dot3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm3(const Vec3& a) { return std::sqrt(dot3(a, a)); }

/// Anisotropic atom-bond well parameters: perpendicular/parallel depths (meV)
/// and well locations (angstrom), mixed by the Jacobi angle.
struct IljBondParams {
  double D_perp = 0.0;
  double D_par = 0.0;
  double lambda_perp = 0.0;
  double lambda_par = 0.0;
};

struct IljParams {
  std::map<std::string, IljBondParams> bond_types;
  double beta = 10.0;
  double m = 6.0;

  void validate() const {
    if (bond_types.empty()) throw validation_error("IljParams: no bond types");
    for (const auto& [name, p] : bond_types) {
      if (!(p.D_perp > 0 && p.D_par > 0 && p.lambda_perp > 0 && p.lambda_par > 0))
        throw validation_error("IljParams: D and lambda must be > 0 for bond type " + name);
    }
    if (!(beta > m)) throw validation_error("IljParams: beta must exceed m");
  }
};

/// Bond-atom parameters for an Ar probe over aromatic CC / CH bonds.
inline IljParams benzene_argon_ilj_params() {
  IljParams p;
  p.bond_types["CC"] = IljBondParams{3.895, 4.910, 3.879, 4.189};
  p.bond_types["CH"] = IljBondParams{4.814, 3.981, 3.641, 3.851};
  p.beta = 10.0;
  p.m = 6.0;
  return p;
}

struct Bond {
  int a = 0;
  int b = 0;
  std::string type;
};

struct MoleculeGeometry {
  std::vector<Vec3> atoms; // angstrom
  std::vector<Bond> bonds;

  void validate() const {
    const int n = static_cast<int>(atoms.size());
    for (const auto& b : bonds)
      if (b.a < 0 || b.a >= n || b.b < 0 || b.b >= n || b.a == b.b)
        throw validation_error("MoleculeGeometry: bond endpoints must reference distinct atoms");
  }
};

/// Regular benzene hexagon in the xy plane centered at the origin,
/// C-C 1.39 A and C-H 1.09 A, with two C-H bonds along the y axis.
inline MoleculeGeometry benzene_geometry(double cc_bond = 1.39, double ch_bond = 1.09) {
  MoleculeGeometry mol;
  const double r_c = cc_bond;           // hexagon circumradius equals the edge
  const double r_h = cc_bond + ch_bond; // H sits radially outward from its C
  for (int k = 0; k < 6; ++k) {
    double ang = (90.0 + 60.0 * k) * M_PI / 180.0;
    mol.atoms.push_back({r_c * std::cos(ang), r_c * std::sin(ang), 0.0});
  }
  for (int k = 0; k < 6; ++k) {
    double ang = (90.0 + 60.0 * k) * M_PI / 180.0;
    mol.atoms.push_back({r_h * std::cos(ang), r_h * std::sin(ang), 0.0});
  }
  for (int k = 0; k < 6; ++k) {
    mol.bonds.push_back({k, (k + 1) % 6, "CC"});
    mol.bonds.push_back({k, 6 + k, "CH"});
  }
  return mol;
}

/// Single atom-bond term:
///   V = D/(n(s) - m) * (m/s^n(s) - n(s)/s^m),  n(s) = beta + 4 s^2,
/// with s = |R_a - R_b| / lambda_ab and D, lambda_ab interpolated between the
/// perpendicular and parallel values by cos^2/sin^2 of the Jacobi angle
/// (bond direction vs. the bond-center-to-atom vector).
inline double ilj_atom_bond(const Vec3& atom, const Vec3& bond_center, const Vec3& bond_dir,
                            const IljBondParams& p, double beta, double m) {
  Vec3 rel{atom[0] - bond_center[0], atom[1] - bond_center[1], atom[2] - bond_center[2]};
  const double dist = norm3(rel);
  if (dist == 0.0)
    throw numerical_error("ilj_atom_bond: probe atom coincides with the bond center");
  const double dir_norm = norm3(bond_dir);
  if (dir_norm == 0.0) throw validation_error("ilj_atom_bond: zero-length bond");
  double cos_t = dot3(rel, bond_dir) / (dist * dir_norm);
  double cos2 = cos_t * cos_t;
  if (cos2 > 1.0) cos2 = 1.0; // rounding guard
  const double sin2 = 1.0 - cos2;

  const double D = p.D_perp * sin2 + p.D_par * cos2;
  const double lambda = p.lambda_perp * sin2 + p.lambda_par * cos2;
  const double s = dist / lambda;
  const double n = beta + 4.0 * s * s;
  return D / (n - m) * (m / std::pow(s, n) - n / std::pow(s, m));
}

inline double ilj_atom_bond(const Vec3& atom, const MoleculeGeometry& mol, const Bond& bond,
                            const IljParams& params) {
  auto it = params.bond_types.find(bond.type);
  if (it == params.bond_types.end())
    throw validation_error("ilj_atom_bond: no parameters for bond type " + bond.type);
  const Vec3& ra = mol.atoms[bond.a];
  const Vec3& rb = mol.atoms[bond.b];
  Vec3 center{(ra[0] + rb[0]) / 2, (ra[1] + rb[1]) / 2, (ra[2] + rb[2]) / 2};
  Vec3 dir{rb[0] - ra[0], rb[1] - ra[1], rb[2] - ra[2]};
  return ilj_atom_bond(atom, center, dir, it->second, params.beta, params.m);
}

/// Total probe-molecule interaction: sum of atom-bond terms over all bonds (meV).
inline double ilj_interaction_energy(const Vec3& atom, const MoleculeGeometry& mol,
                                     const IljParams& params) {
  mol.validate();
  if (mol.bonds.empty()) throw validation_error("ilj_interaction_energy: molecule has no bonds");
  double e = 0.0;
  for (const auto& b : mol.bonds) e += ilj_atom_bond(atom, mol, b, params);
  return e;
}

struct SurfaceMinimum {
  double x = 0.0;
  double z = 0.0;
  double energy = 0.0;
};

/// Brute-force scan of the probe energy over an xz window at y = 0.
inline SurfaceMinimum scan_xz_minimum(const MoleculeGeometry& mol, const IljParams& params,
                                      double x_lo, double x_hi, double z_lo, double z_hi,
                                      double step, int threads = 1) {
  if (!(step > 0.0)) throw validation_error("scan_xz_minimum: step must be > 0");
  const auto nx = static_cast<std::size_t>(std::floor((x_hi - x_lo) / step + 0.5)) + 1;
  const auto nz = static_cast<std::size_t>(std::floor((z_hi - z_lo) / step + 0.5)) + 1;
  std::vector<SurfaceMinimum> best_per_row(nz, SurfaceMinimum{0, 0, std::numeric_limits<double>::infinity()});
  parallel_for(nz, threads, [&](std::size_t r0, std::size_t r1) {
    for (std::size_t r = r0; r < r1; ++r) {
      double z = z_lo + static_cast<double>(r) * step;
      SurfaceMinimum best{0, z, std::numeric_limits<double>::infinity()};
      for (std::size_t i = 0; i < nx; ++i) {
        double x = x_lo + static_cast<double>(i) * step;
        double e = ilj_interaction_energy({x, 0.0, z}, mol, params);
        if (e < best.energy) best = {x, z, e};
      }
      best_per_row[r] = best;
    }
  });
  SurfaceMinimum best = best_per_row.front();
  for (const auto& b : best_per_row)
    if (b.energy < best.energy) best = b;
  return best;
}

} // namespace qgopt
