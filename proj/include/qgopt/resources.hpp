#pragma once

#include "qgopt/common.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace qgopt {

enum class RegKind { electron, nucleus, redundant, distance };
enum class GateKind { ee, en, nn, ext, copy };

struct RegRef {
  RegKind kind;
  int index;
  auto operator<=>(const RegRef&) const = default;
};

struct Gate {
  GateKind kind;
  std::vector<RegRef> operands;
};

inline const char* gate_kind_name(GateKind k) {
  switch (k) {
  case GateKind::ee: return "ee";
  case GateKind::en: return "en";
  case GateKind::nn: return "nn";
  case GateKind::ext: return "ext";
  case GateKind::copy: return "copy";
  }
  return "?";
}

inline std::string reg_name(const RegRef& r) {
  switch (r.kind) {
  case RegKind::electron: return "e" + std::to_string(r.index);
  case RegKind::nucleus: return "n" + std::to_string(r.index);
  case RegKind::redundant: return "r" + std::to_string(r.index);
  case RegKind::distance: return "d" + std::to_string(r.index);
  }
  return "?";
}

/// Layered gate plan. Within one layer no register is touched twice.
struct GateSchedule {
  std::vector<std::vector<Gate>> layers;

  int depth() const { return static_cast<int>(layers.size()); }

  int phase_layer_count() const {
    int d = 0;
    for (const auto& layer : layers)
      if (!layer.empty() && layer.front().kind != GateKind::copy) ++d;
    return d;
  }

  std::size_t gate_count(GateKind kind) const {
    std::size_t n = 0;
    for (const auto& layer : layers)
      for (const auto& g : layer)
        if (g.kind == kind) ++n;
    return n;
  }

  std::size_t total_gates() const {
    std::size_t n = 0;
    for (const auto& layer : layers) n += layer.size();
    return n;
  }

  bool layers_register_disjoint() const {
    for (const auto& layer : layers) {
      std::set<RegRef> seen;
      for (const auto& g : layer)
        for (const auto& r : g.operands)
          if (!seen.insert(r).second) return false;
    }
    return true;
  }

  /// One line per layer: "layer k: kind(op,op,...) ..."
  std::string netlist() const {
    std::ostringstream os;
    for (std::size_t l = 0; l < layers.size(); ++l) {
      os << "layer " << l << ":";
      for (const auto& g : layers[l]) {
        os << ' ' << gate_kind_name(g.kind) << '(';
        for (std::size_t i = 0; i < g.operands.size(); ++i) {
          if (i) os << ',';
          os << reg_name(g.operands[i]);
        }
        os << ')';
      }
      os << '\n';
    }
    return os.str();
  }
};

/// Pairwise e-e phase gates, each pair once. Gates sharing a distance register
/// cannot overlap, so with r registers a layer holds at most r electron-disjoint
/// pairs; r = 1 serializes to depth n_e (n_e - 1) / 2.
inline GateSchedule schedule_ee(int n_e, int registers_available = 1) {
  if (n_e < 2) throw validation_error("schedule_ee: n_e must be >= 2");
  if (registers_available < 1)
    throw validation_error("schedule_ee: need at least one distance register");
  GateSchedule sched;
  for (int lp = 0; lp < n_e; ++lp)
    for (int l = lp + 1; l < n_e; ++l) {
      bool placed = false;
      for (auto& layer : sched.layers) {
        if (static_cast<int>(layer.size()) >= registers_available) continue;
        bool clash = false;
        for (const auto& g : layer)
          for (const auto& r : g.operands)
            if (r.kind == RegKind::electron && (r.index == l || r.index == lp)) clash = true;
        if (clash) continue;
        layer.push_back(Gate{GateKind::ee,
                             {RegRef{RegKind::electron, l},
                              RegRef{RegKind::electron, lp},
                              RegRef{RegKind::distance, static_cast<int>(layer.size())}}});
        placed = true;
        break;
      }
      if (!placed)
        sched.layers.push_back({Gate{GateKind::ee,
                                     {RegRef{RegKind::electron, l},
                                      RegRef{RegKind::electron, lp},
                                      RegRef{RegKind::distance, 0}}}});
    }
  return sched;
}

/// e-n phase gates in n_e round-robin layers: layer d pairs electron
/// (nu + d) mod n_e with nucleus nu, one distance register per nucleus.
inline GateSchedule schedule_en(int n_e, int n_nucl) {
  if (n_nucl < 1) throw validation_error("schedule_en: n_nucl must be >= 1");
  if (n_e < n_nucl)
    throw validation_error("schedule_en: scheduling assumes n_e >= n_nucl");
  GateSchedule sched;
  for (int d = 0; d < n_e; ++d) {
    std::vector<Gate> layer;
    for (int nu = 0; nu < n_nucl; ++nu) {
      const int l = (nu + d) % n_e;
      layer.push_back(Gate{GateKind::en,
                           {RegRef{RegKind::electron, l}, RegRef{RegKind::nucleus, nu},
                            RegRef{RegKind::distance, nu}}});
    }
    sched.layers.push_back(std::move(layer));
  }
  return sched;
}

/// Pairwise n-n phase gates serialized on one shared distance register.
inline GateSchedule schedule_nn(int n_nucl) {
  if (n_nucl < 2) throw validation_error("schedule_nn: n_nucl must be >= 2");
  GateSchedule sched;
  for (int np = 0; np < n_nucl; ++np)
    for (int nu = np + 1; nu < n_nucl; ++nu)
      sched.layers.push_back({Gate{GateKind::nn,
                                   {RegRef{RegKind::nucleus, nu}, RegRef{RegKind::nucleus, np},
                                    RegRef{RegKind::distance, 0}}}});
  return sched;
}

/// e-e evolution through a redundant copy of the electronic register:
/// a CNOT copy layer, n_e - 1 phase layers (layer d pairs electronic l' + d
/// with redundant l'), and a CNOT uncopy layer. Phase gates total C(n_e, 2).
inline GateSchedule schedule_ee_redundant(int n_e) {
  if (n_e < 2) throw validation_error("schedule_ee_redundant: n_e must be >= 2");
  GateSchedule sched;
  std::vector<Gate> copy_layer;
  for (int l = 0; l < n_e; ++l)
    copy_layer.push_back(
        Gate{GateKind::copy, {RegRef{RegKind::electron, l}, RegRef{RegKind::redundant, l}}});
  sched.layers.push_back(copy_layer);
  for (int d = 1; d < n_e; ++d) {
    std::vector<Gate> layer;
    for (int lp = 0; lp + d < n_e; ++lp)
      layer.push_back(Gate{GateKind::ee,
                           {RegRef{RegKind::electron, lp + d}, RegRef{RegKind::redundant, lp},
                            RegRef{RegKind::distance, lp}}});
    sched.layers.push_back(std::move(layer));
  }
  sched.layers.push_back(copy_layer);
  return sched;
}

struct DistanceRegisterSizes {
  int ee = 1;
  int en = 1;
  int nn = 1;
};

/// Distance-register widths matched to the source-register resolutions:
/// n_d_ee = n_qe, n_d_en = max(n_qe, n_qn), n_d_nn = n_qn, times a multiplier.
inline DistanceRegisterSizes distance_register_sizes(int n_qe, int n_qn, int multiplier = 1) {
  if (n_qe < 1 || n_qn < 1)
    throw validation_error("distance_register_sizes: widths must be positive");
  if (multiplier < 1) throw validation_error("distance_register_sizes: multiplier must be >= 1");
  return DistanceRegisterSizes{multiplier * n_qe, multiplier * std::max(n_qe, n_qn),
                               multiplier * n_qn};
}

/// Polynomial in the register width, lowest coefficient first.
struct CostPolynomial {
  std::vector<double> coeffs{0.0, 0.0, 1.0}; // default: quadratic

  double eval(int n) const {
    double acc = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * n + coeffs[i];
    return std::max(1.0, acc); // every sub-circuit costs at least one layer
  }
};

/// Abstracted per-gate sub-circuit depths. Reversible arithmetic inside the
/// distance computation is not synthesized; it enters only through these
/// polynomials in the distance-register width.
struct CostModel {
  CostPolynomial dist_compute;
  CostPolynomial phase;
  CostPolynomial uncompute;
  double kinetic_coeff = 1.0;  // depth(T) = coeff * n_qe^2
  int ee_registers = 1;        // distance registers for the naive e-e product
  int size_multiplier = 1;     // scales distance_register_sizes

  double gate_cost(int n_d) const {
    return dist_compute.eval(n_d) + phase.eval(n_d) + uncompute.eval(n_d);
  }
};

struct TermDepth {
  std::string term;
  std::size_t gates = 0;
  double depth = 0.0;
  std::string asymptotic;
};

struct DepthReport {
  int n_e = 0, n_nucl = 0, n_qe = 0, n_qn = 0;
  bool redundant = false;
  DistanceRegisterSizes registers;
  std::vector<TermDepth> terms;
  double position_depth = 0.0; // max(ee, nn) + en + ext
  double total_depth = 0.0;    // position + kinetic

  const TermDepth& term(const std::string& name) const {
    for (const auto& t : terms)
      if (t.term == name) return t;
    throw validation_error("DepthReport: unknown term " + name);
  }
};

/// Per-term depths for one split-step evolution. The e-e and n-n branches act
/// on disjoint registers and are counted in parallel (max, not sum).
inline DepthReport depth_report(int n_e, int n_nucl, int n_qe, int n_qn, const CostModel& cost,
                                bool redundant) {
  if (n_e < 1 || n_nucl < 1) throw validation_error("depth_report: particle counts must be >= 1");
  DepthReport rep;
  rep.n_e = n_e;
  rep.n_nucl = n_nucl;
  rep.n_qe = n_qe;
  rep.n_qn = n_qn;
  rep.redundant = redundant;
  rep.registers = distance_register_sizes(n_qe, n_qn, cost.size_multiplier);

  double ee_depth = 0.0;
  std::size_t ee_gates = 0;
  if (n_e >= 2) {
    if (redundant) {
      auto s = schedule_ee_redundant(n_e);
      ee_gates = s.gate_count(GateKind::ee);
      ee_depth = s.phase_layer_count() * cost.gate_cost(rep.registers.ee) + 2.0; // CNOT layers
    } else {
      auto s = schedule_ee(n_e, cost.ee_registers);
      ee_gates = s.gate_count(GateKind::ee);
      ee_depth = s.depth() * cost.gate_cost(rep.registers.ee);
    }
  }
  rep.terms.push_back({"V_ee", ee_gates, ee_depth,
                       redundant ? "O(n_e * poly(n_qe)) [+O(n_e n_qe) qubits]"
                                 : "O(n_e^2 * poly(n_qe))"});

  double en_depth = 0.0;
  std::size_t en_gates = 0;
  if (n_nucl >= 1 && n_e >= n_nucl) {
    auto s = schedule_en(n_e, n_nucl);
    en_gates = s.gate_count(GateKind::en);
    en_depth = s.depth() * cost.gate_cost(rep.registers.en);
  }
  rep.terms.push_back({"V_en", en_gates, en_depth, "O(n_e * poly(max(n_qe, n_qn)))"});

  double nn_depth = 0.0;
  std::size_t nn_gates = 0;
  if (n_nucl >= 2) {
    auto s = schedule_nn(n_nucl);
    nn_gates = s.gate_count(GateKind::nn);
    nn_depth = s.depth() * cost.gate_cost(rep.registers.nn);
  }
  rep.terms.push_back({"V_nn", nn_gates, nn_depth, "O(n_nucl^2 * poly(n_qn))"});

  const double ext_depth = cost.phase.eval(n_qe);
  rep.terms.push_back({"V_ext", static_cast<std::size_t>(n_e), ext_depth, "O(poly(n_qe))"});

  const double kin_depth = std::max(1.0, cost.kinetic_coeff * n_qe * n_qe);
  rep.terms.push_back(
      {"T", static_cast<std::size_t>(n_e), kin_depth, "O(n_qe^2), independent of n_e"});

  rep.position_depth = std::max(ee_depth, nn_depth) + en_depth + ext_depth;
  rep.total_depth = rep.position_depth + kin_depth;
  return rep;
}

} // namespace qgopt
