#pragma once

#include "qgopt/common.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace qgopt {

/// v(r) = 1 / sqrt(lambda^2 + r^2); lambda^2 sets the softness at contact.
inline double soft_coulomb(double r, double lambda_sq) {
  if (r < 0.0) throw validation_error("soft_coulomb: r must be >= 0");
  if (!(lambda_sq > 0.0)) throw validation_error("soft_coulomb: lambda_sq must be > 0");
  return 1.0 / std::sqrt(lambda_sq + r * r);
}

/// Pairwise radial interaction shared by the e-e, e-n and n-n terms.
/// Sign and charge prefactors are applied by callers.
class PairPotential {
public:
  enum class Kind { soft_coulomb, bare_coulomb, polynomial, tabulated };

  static PairPotential soft(double lambda_sq) {
    if (!(lambda_sq > 0.0)) throw validation_error("PairPotential: lambda_sq must be > 0");
    PairPotential p;
    p.kind_ = Kind::soft_coulomb;
    p.lambda_sq_ = lambda_sq;
    return p;
  }

  static PairPotential bare() {
    PairPotential p;
    p.kind_ = Kind::bare_coulomb;
    return p;
  }

  /// v(r) = sum_i coeffs[i] * r^i
  static PairPotential polynomial(std::vector<double> coeffs) {
    if (coeffs.empty()) throw validation_error("PairPotential: polynomial needs coefficients");
    PairPotential p;
    p.kind_ = Kind::polynomial;
    p.coeffs_ = std::move(coeffs);
    return p;
  }

  /// Piecewise-linear table over an ascending r grid.
  static PairPotential tabulated(std::vector<double> r, std::vector<double> v) {
    if (r.size() < 2 || r.size() != v.size())
      throw validation_error("PairPotential: table needs >= 2 matching points");
    for (std::size_t i = 1; i < r.size(); ++i)
      if (!(r[i] > r[i - 1])) throw validation_error("PairPotential: table r grid must ascend");
    PairPotential p;
    p.kind_ = Kind::tabulated;
    p.table_r_ = std::move(r);
    p.table_v_ = std::move(v);
    return p;
  }

  Kind kind() const { return kind_; }
  double lambda_sq() const { return lambda_sq_; }
  bool singular_at_zero() const { return kind_ == Kind::bare_coulomb; }

  double operator()(double r) const {
    switch (kind_) {
    case Kind::soft_coulomb:
      return 1.0 / std::sqrt(lambda_sq_ + r * r);
    case Kind::bare_coulomb:
      if (r == 0.0)
        throw numerical_error("bare_coulomb potential is singular at r = 0; "
                              "use a softened potential for on-site pairs");
      return 1.0 / r;
    case Kind::polynomial: {
      double acc = 0.0;
      for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * r + coeffs_[i];
      return acc;
    }
    case Kind::tabulated: {
      if (r < table_r_.front() || r > table_r_.back())
        throw bounds_error("tabulated potential: r = " + std::to_string(r) +
                           " outside table range");
      auto it = std::lower_bound(table_r_.begin(), table_r_.end(), r);
      if (it == table_r_.begin()) return table_v_.front();
      std::size_t hi = static_cast<std::size_t>(it - table_r_.begin());
      std::size_t lo = hi - 1;
      double t = (r - table_r_[lo]) / (table_r_[hi] - table_r_[lo]);
      return table_v_[lo] + t * (table_v_[hi] - table_v_[lo]);
    }
    }
    return 0.0;
  }

private:
  Kind kind_ = Kind::soft_coulomb;
  double lambda_sq_ = 1.0;
  std::vector<double> coeffs_;
  std::vector<double> table_r_, table_v_;
};

/// Scalar field over positions; defaults to zero everywhere.
struct ExternalField {
  std::function<double(const double* pos, int dim)> field;

  double operator()(const double* pos, int dim) const {
    return field ? field(pos, dim) : 0.0;
  }
  bool is_zero() const { return !static_cast<bool>(field); }
};

/// Potential felt by one electron in the two-ion model with unit charges:
/// soft-Coulomb attraction to H (lambda^2 = 0.7) and Li (lambda^2 = 2.25).
inline double lih_electron_nucleus_potential(double x, double x_h, double x_li) {
  return -soft_coulomb(std::abs(x - x_h), 0.7) - soft_coulomb(std::abs(x - x_li), 2.25);
}

} // namespace qgopt
