#pragma once

#include "qgopt/common.hpp"
#include "qgopt/hamiltonian.hpp"
#include "qgopt/ilj.hpp"
#include "qgopt/pite.hpp"
#include "qgopt/registers.hpp"
#include "qgopt/resources.hpp"
#include "qgopt/vite.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace qgopt {

using json = nlohmann::json;

namespace cfg {

inline void check_keys(const json& obj, const std::string& path,
                       std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw validation_error(path + ": expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) ok = true;
    if (!ok) throw validation_error(path + ": unknown key '" + it.key() + "'");
  }
}

inline const json& require(const json& obj, const std::string& path, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw validation_error(path + ": missing required key '" + key + "'");
  return *it;
}

inline double number(const json& v, const std::string& path) {
  if (!v.is_number()) throw validation_error(path + ": expected a number");
  return v.get<double>();
}

inline int integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw validation_error(path + ": expected an integer");
  return v.get<int>();
}

/// A number, or a string "value unit" whose unit must match the expected tag.
inline double quantity(const json& v, const std::string& path, const std::string& expected_unit) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    std::size_t pos = 0;
    double value = 0.0;
    try {
      value = std::stod(s, &pos);
    } catch (const std::exception&) {
      throw validation_error(path + ": cannot parse quantity '" + s + "'");
    }
    std::string unit = s.substr(pos);
    while (!unit.empty() && unit.front() == ' ') unit.erase(unit.begin());
    if (unit != expected_unit)
      throw validation_error(path + ": expected unit '" + expected_unit + "', got '" + unit + "'");
    return value;
  }
  throw validation_error(path + ": expected a number or 'value unit' string");
}

} // namespace cfg

struct GuessConfig {
  enum class Kind { uniform, point, weights };
  Kind kind = Kind::uniform;
  std::uint64_t point_index = 0;
  std::vector<double> weights;

  InitialGuess resolve(std::uint64_t n_geometries) const {
    switch (kind) {
    case Kind::uniform:
      return InitialGuess::uniform(n_geometries);
    case Kind::point:
      return InitialGuess::point(n_geometries, point_index);
    case Kind::weights: {
      if (weights.size() != n_geometries)
        throw validation_error("guess.weights: expected " + std::to_string(n_geometries) +
                               " entries, got " + std::to_string(weights.size()));
      InitialGuess g{weights};
      g.validate();
      return g;
    }
    }
    return InitialGuess::uniform(n_geometries);
  }
};

struct QuantumSystemConfig {
  RegisterLayout layout;
  GeometryGrid grid;
  PotentialTerms terms;
  std::vector<std::string> labels;
};

struct ClassicalSystemConfig {
  enum class Kind { ilj_probe, point_charges };
  Kind kind = Kind::ilj_probe;
  // ilj_probe:
  MoleculeGeometry molecule;
  IljParams ilj;
  GeometryGrid probe; // one "nucleus" = the probe atom, search coords over x/z
  // point_charges:
  GeometryGrid charges;
  std::vector<PairPotential> nn;
};

struct PiteConfig {
  int n_steps = 19;
  double gamma = 0.9;
  std::optional<double> e_shift;
  long long shots = 0;
  std::uint64_t seed = 0;
  bool ground_state_weights = false;
  std::optional<double> dtau; // classical-pite constant step (inv_meV / inverse energy)
};

struct ViteConfig {
  int depth = 12;
  double dtau = 0.01;
  int steps = 6000;
  std::uint64_t seed = 1;
  double lambda_reg = 1e-6;
  char axis = 'y';
  int track_geometry = -1;
  int track_states = 3;
};

struct DiagonalizeConfig {
  int n_states = 3;
  std::vector<std::uint64_t> density_geometries;
  int density_states = 3;
};

struct ResourcesConfig {
  int n_e = 4;
  int n_nucl = 3;
  int n_qe = 6;
  int n_qn = 3;
  CostModel cost;
  bool emit_netlists = true;
};

struct ExperimentConfig {
  std::string experiment; // diagonalize | pite | vite | classical-pite | resources
  int threads = 1;
  std::string output_directory = "out";
  std::optional<QuantumSystemConfig> quantum;
  std::optional<ClassicalSystemConfig> classical;
  ReferenceSpec reference;
  bool has_reference = false;
  GuessConfig guess;
  std::optional<TauSchedule> schedule;
  PiteConfig pite;
  ViteConfig vite;
  DiagonalizeConfig diagonalize;
  ResourcesConfig resources;
  json raw; // canonical parsed config, for hashing and the manifest
};

namespace cfg {

inline PairPotential parse_potential(const json& j, const std::string& path) {
  check_keys(j, path, {"kind", "lambda_sq", "coefficients", "r", "values"});
  const auto kind = require(j, path, "kind").get<std::string>();
  if (kind == "soft_coulomb")
    return PairPotential::soft(number(require(j, path, "lambda_sq"), path + ".lambda_sq"));
  if (kind == "bare_coulomb") return PairPotential::bare();
  if (kind == "polynomial") {
    const auto& c = require(j, path, "coefficients");
    if (!c.is_array()) throw validation_error(path + ".coefficients: expected an array");
    return PairPotential::polynomial(c.get<std::vector<double>>());
  }
  if (kind == "tabulated") {
    const auto& r = require(j, path, "r");
    const auto& v = require(j, path, "values");
    if (!r.is_array() || !v.is_array())
      throw validation_error(path + ": tabulated needs 'r' and 'values' arrays");
    return PairPotential::tabulated(r.get<std::vector<double>>(), v.get<std::vector<double>>());
  }
  throw validation_error(path + ".kind: unknown potential kind '" + kind + "'");
}

inline int axis_index(const std::string& s, const std::string& path) {
  if (s == "x") return 0;
  if (s == "y") return 1;
  if (s == "z") return 2;
  throw validation_error(path + ": axis must be x, y or z");
}

inline SearchCoordinate parse_search_coordinate(const json& j, const std::string& path,
                                                int nucleus, const std::array<double, 3>& base_pos) {
  check_keys(j, path, {"axis", "n_qn", "base", "max_displacement"});
  SearchCoordinate sc;
  sc.nucleus = nucleus;
  sc.axis = axis_index(require(j, path, "axis").get<std::string>(), path + ".axis");
  sc.n_qn = integer(require(j, path, "n_qn"), path + ".n_qn");
  if (sc.n_qn < 1) throw validation_error(path + ".n_qn: must be >= 1");
  sc.base = j.contains("base") ? number(j["base"], path + ".base") : base_pos[sc.axis];
  sc.max_displacement = number(require(j, path, "max_displacement"), path + ".max_displacement");
  if (!(sc.max_displacement > 0.0))
    throw validation_error(path + ".max_displacement: must be > 0");
  return sc;
}

inline std::array<double, 3> parse_position(const json& j, const std::string& path, int dim) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    throw validation_error(path + ": expected an array of " + std::to_string(dim) + " coordinates");
  std::array<double, 3> pos{0.0, 0.0, 0.0};
  for (int d = 0; d < dim; ++d) pos[static_cast<std::size_t>(d)] = number(j[d], path);
  return pos;
}

inline QuantumSystemConfig parse_quantum_system(const json& j, const std::string& path) {
  check_keys(j, path, {"kind", "units", "layout", "nuclei", "potentials"});
  const auto units = require(j, path, "units").get<std::string>();
  if (units != "au") throw validation_error(path + ".units: quantum systems use 'au'");

  const auto& jl = require(j, path, "layout");
  check_keys(jl, path + ".layout", {"n_e", "spatial_dim", "n_qe", "cell_length"});
  QuantumSystemConfig sys;
  sys.layout = build_layout(integer(require(jl, path, "n_e"), path + ".layout.n_e"),
                            integer(require(jl, path, "spatial_dim"), path + ".layout.spatial_dim"),
                            integer(require(jl, path, "n_qe"), path + ".layout.n_qe"),
                            number(require(jl, path, "cell_length"), path + ".layout.cell_length"));

  sys.grid.spatial_dim = sys.layout.spatial_dim;
  const auto& jn = require(j, path, "nuclei");
  if (!jn.is_array() || jn.empty()) throw validation_error(path + ".nuclei: expected a nonempty array");
  for (std::size_t i = 0; i < jn.size(); ++i) {
    const std::string np = path + ".nuclei[" + std::to_string(i) + "]";
    check_keys(jn[i], np, {"label", "charge", "position", "search"});
    sys.labels.push_back(jn[i].contains("label") ? jn[i]["label"].get<std::string>()
                                                 : "nucleus" + std::to_string(i));
    sys.grid.charges.push_back(number(require(jn[i], np, "charge"), np + ".charge"));
    sys.grid.base_positions.push_back(
        parse_position(require(jn[i], np, "position"), np + ".position", sys.layout.spatial_dim));
    if (jn[i].contains("search")) {
      const auto& js = jn[i]["search"];
      if (!js.is_array()) throw validation_error(np + ".search: expected an array");
      for (std::size_t c = 0; c < js.size(); ++c)
        sys.grid.search.push_back(parse_search_coordinate(
            js[c], np + ".search[" + std::to_string(c) + "]", static_cast<int>(i),
            sys.grid.base_positions.back()));
    }
  }
  sys.grid.validate();

  const auto& jp = require(j, path, "potentials");
  check_keys(jp, path + ".potentials", {"ee", "en", "nn"});
  if (jp.contains("ee")) sys.terms.ee = parse_potential(jp["ee"], path + ".potentials.ee");
  const int n_nucl = sys.grid.n_nucl();
  if (jp.contains("en")) {
    const auto& je = jp["en"];
    if (je.is_array()) {
      for (std::size_t i = 0; i < je.size(); ++i)
        sys.terms.en.push_back(
            parse_potential(je[i], path + ".potentials.en[" + std::to_string(i) + "]"));
    } else {
      const auto p = parse_potential(je, path + ".potentials.en");
      sys.terms.en.assign(static_cast<std::size_t>(n_nucl), p);
    }
  }
  const auto n_pairs = static_cast<std::size_t>(n_nucl) * (n_nucl - 1) / 2;
  if (jp.contains("nn")) {
    const auto& jv = jp["nn"];
    if (jv.is_array()) {
      for (std::size_t i = 0; i < jv.size(); ++i)
        sys.terms.nn.push_back(
            parse_potential(jv[i], path + ".potentials.nn[" + std::to_string(i) + "]"));
    } else {
      const auto p = parse_potential(jv, path + ".potentials.nn");
      sys.terms.nn.assign(n_pairs, p);
    }
  }
  sys.terms.validate(sys.layout, sys.grid);
  return sys;
}

inline ClassicalSystemConfig parse_classical_system(const json& j, const std::string& path) {
  check_keys(j, path, {"kind", "units", "molecule", "ilj", "probe", "nuclei", "potentials"});
  const auto units = require(j, path, "units").get<std::string>();
  ClassicalSystemConfig sys;

  if (j.contains("molecule")) {
    if (units != "mev_angstrom")
      throw validation_error(path + ".units: the atom-bond model uses 'mev_angstrom'");
    sys.kind = ClassicalSystemConfig::Kind::ilj_probe;

    const auto& jm = j["molecule"];
    check_keys(jm, path + ".molecule", {"preset", "atoms", "bonds"});
    if (jm.contains("preset")) {
      const auto preset = jm["preset"].get<std::string>();
      if (preset != "benzene")
        throw validation_error(path + ".molecule.preset: unknown preset '" + preset + "'");
      sys.molecule = benzene_geometry();
    } else {
      const auto& ja = require(jm, path + ".molecule", "atoms");
      for (std::size_t i = 0; i < ja.size(); ++i)
        sys.molecule.atoms.push_back(
            parse_position(ja[i], path + ".molecule.atoms[" + std::to_string(i) + "]", 3));
      const auto& jb = require(jm, path + ".molecule", "bonds");
      for (std::size_t i = 0; i < jb.size(); ++i) {
        const std::string bp = path + ".molecule.bonds[" + std::to_string(i) + "]";
        check_keys(jb[i], bp, {"atoms", "type"});
        const auto& pair = require(jb[i], bp, "atoms");
        if (!pair.is_array() || pair.size() != 2)
          throw validation_error(bp + ".atoms: expected two atom indices");
        sys.molecule.bonds.push_back(
            {pair[0].get<int>(), pair[1].get<int>(), require(jb[i], bp, "type").get<std::string>()});
      }
      sys.molecule.validate();
    }

    const auto& ji = require(j, path, "ilj");
    check_keys(ji, path + ".ilj", {"beta", "m", "bonds"});
    sys.ilj.beta = number(require(ji, path + ".ilj", "beta"), path + ".ilj.beta");
    sys.ilj.m = number(require(ji, path + ".ilj", "m"), path + ".ilj.m");
    const auto& jb = require(ji, path + ".ilj", "bonds");
    if (!jb.is_object()) throw validation_error(path + ".ilj.bonds: expected an object");
    for (auto it = jb.begin(); it != jb.end(); ++it) {
      const std::string bp = path + ".ilj.bonds." + it.key();
      check_keys(*it, bp, {"lambda_perp", "lambda_par", "D_perp", "D_par"});
      IljBondParams bparams;
      bparams.lambda_perp = number(require(*it, bp, "lambda_perp"), bp + ".lambda_perp");
      bparams.lambda_par = number(require(*it, bp, "lambda_par"), bp + ".lambda_par");
      bparams.D_perp = number(require(*it, bp, "D_perp"), bp + ".D_perp");
      bparams.D_par = number(require(*it, bp, "D_par"), bp + ".D_par");
      sys.ilj.bond_types[it.key()] = bparams;
    }
    sys.ilj.validate();
    for (const auto& b : sys.molecule.bonds)
      if (!sys.ilj.bond_types.count(b.type))
        throw validation_error(path + ".ilj.bonds: no parameters for bond type '" + b.type + "'");

    const auto& jprobe = require(j, path, "probe");
    check_keys(jprobe, path + ".probe", {"label", "search", "frozen"});
    sys.probe.spatial_dim = 3;
    std::array<double, 3> base{0.0, 0.0, 0.0};
    if (jprobe.contains("frozen")) {
      const auto& jf = jprobe["frozen"];
      check_keys(jf, path + ".probe.frozen", {"x", "y", "z"});
      for (auto it = jf.begin(); it != jf.end(); ++it)
        base[static_cast<std::size_t>(axis_index(it.key(), path + ".probe.frozen"))] =
            number(*it, path + ".probe.frozen." + it.key());
    }
    sys.probe.base_positions.push_back(base);
    sys.probe.charges.push_back(0.0);
    const auto& js = require(jprobe, path + ".probe", "search");
    if (!js.is_array() || js.empty())
      throw validation_error(path + ".probe.search: expected a nonempty array");
    for (std::size_t c = 0; c < js.size(); ++c)
      sys.probe.search.push_back(parse_search_coordinate(
          js[c], path + ".probe.search[" + std::to_string(c) + "]", 0, base));
    sys.probe.validate();
    return sys;
  }

  // point charges: nuclei plus an nn pair potential
  sys.kind = ClassicalSystemConfig::Kind::point_charges;
  const auto& jn = require(j, path, "nuclei");
  if (!jn.is_array() || jn.empty()) throw validation_error(path + ".nuclei: expected a nonempty array");
  sys.charges.spatial_dim = 3;
  for (std::size_t i = 0; i < jn.size(); ++i) {
    const std::string np = path + ".nuclei[" + std::to_string(i) + "]";
    check_keys(jn[i], np, {"label", "charge", "position", "search"});
    sys.charges.charges.push_back(number(require(jn[i], np, "charge"), np + ".charge"));
    sys.charges.base_positions.push_back(
        parse_position(require(jn[i], np, "position"), np + ".position", 3));
    if (jn[i].contains("search")) {
      const auto& js = jn[i]["search"];
      for (std::size_t c = 0; c < js.size(); ++c)
        sys.charges.search.push_back(parse_search_coordinate(
            js[c], np + ".search[" + std::to_string(c) + "]", static_cast<int>(i),
            sys.charges.base_positions.back()));
    }
  }
  sys.charges.validate();
  const auto& jp = require(j, path, "potentials");
  check_keys(jp, path + ".potentials", {"nn"});
  const auto n_pairs =
      static_cast<std::size_t>(sys.charges.n_nucl()) * (sys.charges.n_nucl() - 1) / 2;
  const auto& jv = require(jp, path + ".potentials", "nn");
  if (jv.is_array()) {
    for (std::size_t i = 0; i < jv.size(); ++i)
      sys.nn.push_back(parse_potential(jv[i], path + ".potentials.nn[" + std::to_string(i) + "]"));
  } else {
    sys.nn.assign(n_pairs, parse_potential(jv, path + ".potentials.nn"));
  }
  if (sys.nn.size() != n_pairs)
    throw validation_error(path + ".potentials.nn: expected " + std::to_string(n_pairs) +
                           " pair potentials");
  return sys;
}

} // namespace cfg

inline ExperimentConfig parse_experiment_config(const json& j) {
  cfg::check_keys(j, "config",
                  {"experiment", "threads", "output", "system", "reference", "guess", "schedule",
                   "pite", "vite", "diagonalize", "resources"});
  ExperimentConfig cfg_out;
  cfg_out.raw = j;
  cfg_out.experiment = cfg::require(j, "config", "experiment").get<std::string>();
  static const std::set<std::string> kKnown{"diagonalize", "pite", "vite", "classical-pite",
                                            "resources"};
  if (!kKnown.count(cfg_out.experiment))
    throw validation_error("config.experiment: unknown experiment '" + cfg_out.experiment + "'");

  if (j.contains("threads")) {
    cfg_out.threads = cfg::integer(j["threads"], "config.threads");
    if (cfg_out.threads < 1) throw validation_error("config.threads: must be >= 1");
  }
  if (j.contains("output")) {
    cfg::check_keys(j["output"], "config.output", {"directory"});
    if (j["output"].contains("directory"))
      cfg_out.output_directory = j["output"]["directory"].get<std::string>();
  }

  if (j.contains("system")) {
    const auto kind = cfg::require(j["system"], "config.system", "kind").get<std::string>();
    if (kind == "quantum")
      cfg_out.quantum = cfg::parse_quantum_system(j["system"], "config.system");
    else if (kind == "classical")
      cfg_out.classical = cfg::parse_classical_system(j["system"], "config.system");
    else
      throw validation_error("config.system.kind: must be 'quantum' or 'classical'");
  }

  if (j.contains("reference")) {
    const auto& jr = j["reference"];
    cfg::check_keys(jr, "config.reference", {"kind", "width"});
    const auto kind = cfg::require(jr, "config.reference", "kind").get<std::string>();
    if (kind == "gaussian_symmetric")
      cfg_out.reference.kind = ReferenceSpec::Kind::gaussian_symmetric;
    else if (kind == "gaussian_antisymmetric")
      cfg_out.reference.kind = ReferenceSpec::Kind::gaussian_antisymmetric;
    else
      throw validation_error("config.reference.kind: unknown kind '" + kind + "'");
    if (jr.contains("width")) {
      cfg_out.reference.width = cfg::number(jr["width"], "config.reference.width");
      if (!(cfg_out.reference.width > 0.0))
        throw validation_error("config.reference.width: must be > 0");
    }
    cfg_out.has_reference = true;
  }

  if (j.contains("guess")) {
    const auto& jg = j["guess"];
    cfg::check_keys(jg, "config.guess", {"kind", "index", "weights"});
    const auto kind = cfg::require(jg, "config.guess", "kind").get<std::string>();
    if (kind == "uniform") {
      cfg_out.guess.kind = GuessConfig::Kind::uniform;
    } else if (kind == "point") {
      cfg_out.guess.kind = GuessConfig::Kind::point;
      cfg_out.guess.point_index =
          static_cast<std::uint64_t>(cfg::integer(cfg::require(jg, "config.guess", "index"),
                                                  "config.guess.index"));
    } else if (kind == "weights") {
      cfg_out.guess.kind = GuessConfig::Kind::weights;
      cfg_out.guess.weights =
          cfg::require(jg, "config.guess", "weights").get<std::vector<double>>();
    } else {
      throw validation_error("config.guess.kind: unknown kind '" + kind + "'");
    }
  }

  if (j.contains("schedule")) {
    const auto& js = j["schedule"];
    cfg::check_keys(js, "config.schedule", {"dtau_min", "dtau_max", "kappa"});
    TauSchedule s;
    s.dtau_min = cfg::quantity(cfg::require(js, "config.schedule", "dtau_min"),
                               "config.schedule.dtau_min", "au");
    s.dtau_max = cfg::quantity(cfg::require(js, "config.schedule", "dtau_max"),
                               "config.schedule.dtau_max", "au");
    s.kappa = cfg::number(cfg::require(js, "config.schedule", "kappa"), "config.schedule.kappa");
    s.validate();
    cfg_out.schedule = s;
  }

  if (j.contains("pite")) {
    const auto& jp = j["pite"];
    cfg::check_keys(jp, "config.pite",
                    {"n_steps", "gamma", "e_shift", "shots", "seed", "ground_state_weights",
                     "dtau"});
    if (jp.contains("n_steps")) cfg_out.pite.n_steps = cfg::integer(jp["n_steps"], "config.pite.n_steps");
    if (cfg_out.pite.n_steps < 1) throw validation_error("config.pite.n_steps: must be >= 1");
    if (jp.contains("gamma")) cfg_out.pite.gamma = cfg::number(jp["gamma"], "config.pite.gamma");
    if (!(cfg_out.pite.gamma > 0.0 && cfg_out.pite.gamma <= 1.0))
      throw validation_error("config.pite.gamma: must be in (0, 1]");
    if (jp.contains("e_shift")) cfg_out.pite.e_shift = cfg::number(jp["e_shift"], "config.pite.e_shift");
    if (jp.contains("shots")) {
      cfg_out.pite.shots = jp["shots"].get<long long>();
      if (cfg_out.pite.shots < 0) throw validation_error("config.pite.shots: must be >= 0");
    }
    if (jp.contains("seed")) cfg_out.pite.seed = jp["seed"].get<std::uint64_t>();
    if (jp.contains("ground_state_weights"))
      cfg_out.pite.ground_state_weights = jp["ground_state_weights"].get<bool>();
    if (jp.contains("dtau"))
      cfg_out.pite.dtau = cfg::quantity(jp["dtau"], "config.pite.dtau",
                                        cfg_out.classical ? "inv_meV" : "au");
  }

  if (j.contains("vite")) {
    const auto& jv = j["vite"];
    cfg::check_keys(jv, "config.vite",
                    {"depth", "dtau", "steps", "seed", "lambda_reg", "axes", "track_geometry",
                     "track_states"});
    auto& v = cfg_out.vite;
    if (jv.contains("depth")) v.depth = cfg::integer(jv["depth"], "config.vite.depth");
    if (v.depth < 0) throw validation_error("config.vite.depth: must be >= 0");
    if (jv.contains("dtau")) v.dtau = cfg::quantity(jv["dtau"], "config.vite.dtau", "au");
    if (!(v.dtau > 0.0)) throw validation_error("config.vite.dtau: must be > 0");
    if (jv.contains("steps")) v.steps = cfg::integer(jv["steps"], "config.vite.steps");
    if (v.steps < 1) throw validation_error("config.vite.steps: must be >= 1");
    if (jv.contains("seed")) v.seed = jv["seed"].get<std::uint64_t>();
    if (jv.contains("lambda_reg")) v.lambda_reg = cfg::number(jv["lambda_reg"], "config.vite.lambda_reg");
    if (v.lambda_reg < 0.0) throw validation_error("config.vite.lambda_reg: must be >= 0");
    if (jv.contains("axes")) {
      const auto a = jv["axes"].get<std::string>();
      if (a.size() != 1 || (a[0] != 'x' && a[0] != 'y' && a[0] != 'z'))
        throw validation_error("config.vite.axes: expected 'x', 'y' or 'z'");
      v.axis = a[0];
    }
    if (jv.contains("track_geometry"))
      v.track_geometry = cfg::integer(jv["track_geometry"], "config.vite.track_geometry");
    if (jv.contains("track_states")) {
      v.track_states = cfg::integer(jv["track_states"], "config.vite.track_states");
      if (v.track_states < 1) throw validation_error("config.vite.track_states: must be >= 1");
    }
  }

  if (j.contains("diagonalize")) {
    const auto& jd = j["diagonalize"];
    cfg::check_keys(jd, "config.diagonalize", {"n_states", "density_geometries", "density_states"});
    auto& d = cfg_out.diagonalize;
    if (jd.contains("n_states")) d.n_states = cfg::integer(jd["n_states"], "config.diagonalize.n_states");
    if (d.n_states < 1) throw validation_error("config.diagonalize.n_states: must be >= 1");
    if (jd.contains("density_geometries"))
      d.density_geometries = jd["density_geometries"].get<std::vector<std::uint64_t>>();
    if (jd.contains("density_states"))
      d.density_states = cfg::integer(jd["density_states"], "config.diagonalize.density_states");
  }

  if (j.contains("resources")) {
    const auto& jr = j["resources"];
    cfg::check_keys(jr, "config.resources",
                    {"n_e", "n_nucl", "n_qe", "n_qn", "cost_model", "emit_netlists"});
    auto& r = cfg_out.resources;
    if (jr.contains("n_e")) r.n_e = cfg::integer(jr["n_e"], "config.resources.n_e");
    if (jr.contains("n_nucl")) r.n_nucl = cfg::integer(jr["n_nucl"], "config.resources.n_nucl");
    if (jr.contains("n_qe")) r.n_qe = cfg::integer(jr["n_qe"], "config.resources.n_qe");
    if (jr.contains("n_qn")) r.n_qn = cfg::integer(jr["n_qn"], "config.resources.n_qn");
    if (r.n_e < 1 || r.n_nucl < 1 || r.n_qe < 1 || r.n_qn < 1)
      throw validation_error("config.resources: counts and widths must be >= 1");
    if (jr.contains("cost_model")) {
      const auto& jc = jr["cost_model"];
      cfg::check_keys(jc, "config.resources.cost_model",
                      {"dist_compute", "phase", "uncompute", "kinetic_coeff", "ee_registers",
                       "size_multiplier"});
      if (jc.contains("dist_compute"))
        r.cost.dist_compute.coeffs = jc["dist_compute"].get<std::vector<double>>();
      if (jc.contains("phase")) r.cost.phase.coeffs = jc["phase"].get<std::vector<double>>();
      if (jc.contains("uncompute"))
        r.cost.uncompute.coeffs = jc["uncompute"].get<std::vector<double>>();
      if (jc.contains("kinetic_coeff"))
        r.cost.kinetic_coeff = cfg::number(jc["kinetic_coeff"], "kinetic_coeff");
      if (jc.contains("ee_registers"))
        r.cost.ee_registers = cfg::integer(jc["ee_registers"], "ee_registers");
      if (jc.contains("size_multiplier"))
        r.cost.size_multiplier = cfg::integer(jc["size_multiplier"], "size_multiplier");
    }
    if (jr.contains("emit_netlists")) r.emit_netlists = jr["emit_netlists"].get<bool>();
  }

  // cross-section requirements per experiment
  const auto& exp = cfg_out.experiment;
  if (exp == "pite") {
    if (!cfg_out.quantum) throw validation_error("pite: requires a quantum system section");
    if (!cfg_out.has_reference) throw validation_error("pite: requires a reference section");
    if (!cfg_out.schedule) throw validation_error("pite: requires a schedule section");
  } else if (exp == "vite") {
    if (!cfg_out.quantum) throw validation_error("vite: requires a quantum system section");
  } else if (exp == "classical-pite") {
    if (!cfg_out.classical) throw validation_error("classical-pite: requires a classical system");
    if (!cfg_out.pite.dtau && !cfg_out.schedule)
      throw validation_error("classical-pite: requires pite.dtau or a schedule section");
  } else if (exp == "diagonalize") {
    if (!cfg_out.quantum) throw validation_error("diagonalize: requires a quantum system section");
  }
  return cfg_out;
}

inline ExperimentConfig parse_experiment_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw validation_error(std::string("config: invalid JSON: ") + e.what());
  }
  return parse_experiment_config(j);
}

/// All schema violations found without running anything; empty means valid.
/// Sections are probed independently so one bad section does not hide another.
inline std::vector<std::string> validate_config(const std::string& text) {
  std::vector<std::string> diags;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    diags.push_back(std::string("invalid JSON: ") + e.what());
    return diags;
  }
  auto probe = [&diags](auto&& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      const std::string msg = e.what();
      if (std::find(diags.begin(), diags.end(), msg) == diags.end()) diags.push_back(msg);
    }
  };
  if (j.contains("system")) {
    probe([&] {
      const auto kind = cfg::require(j["system"], "config.system", "kind").get<std::string>();
      if (kind == "quantum")
        cfg::parse_quantum_system(j["system"], "config.system");
      else if (kind == "classical")
        cfg::parse_classical_system(j["system"], "config.system");
      else
        throw validation_error("config.system.kind: must be 'quantum' or 'classical'");
    });
  }
  if (j.contains("schedule")) {
    probe([&] {
      json sub{{"experiment", "resources"}, {"schedule", j["schedule"]}};
      parse_experiment_config(sub);
    });
  }
  probe([&] { parse_experiment_config(j); });
  return diags;
}

// ---------------------------------------------------------------------------
// Built-in presets reproducing the three reference experiments.
// ---------------------------------------------------------------------------

inline const std::map<std::string, std::string>& preset_configs() {
  static const std::map<std::string, std::string> presets{
      {"lih-1d", R"({
  "experiment": "pite",
  "system": {
    "kind": "quantum",
    "units": "au",
    "layout": {"n_e": 2, "spatial_dim": 1, "n_qe": 6, "cell_length": 15.0},
    "nuclei": [
      {"label": "H", "charge": 1.0, "position": [5.5]},
      {"label": "Li", "charge": 1.0, "position": [6.05],
       "search": [{"axis": "x", "n_qn": 3, "max_displacement": 4.0}]}
    ],
    "potentials": {
      "ee": {"kind": "soft_coulomb", "lambda_sq": 0.6},
      "en": [{"kind": "soft_coulomb", "lambda_sq": 0.7},
             {"kind": "soft_coulomb", "lambda_sq": 2.25}],
      "nn": [{"kind": "soft_coulomb", "lambda_sq": 2.35}]
    }
  },
  "reference": {"kind": "gaussian_symmetric", "width": 3.0},
  "guess": {"kind": "uniform"},
  "schedule": {"dtau_min": 0.2, "dtau_max": 0.3, "kappa": 8.0},
  "pite": {"n_steps": 19, "gamma": 0.9, "shots": 100000, "seed": 7,
           "ground_state_weights": true},
  "diagonalize": {"n_states": 3, "density_geometries": [2, 7], "density_states": 3}
})"},
      {"h2plus-1d", R"({
  "experiment": "vite",
  "system": {
    "kind": "quantum",
    "units": "au",
    "layout": {"n_e": 1, "spatial_dim": 1, "n_qe": 6, "cell_length": 15.0},
    "nuclei": [
      {"label": "Ha", "charge": 1.0, "position": [4.0]},
      {"label": "Hb", "charge": 1.0, "position": [4.5],
       "search": [{"axis": "x", "n_qn": 3, "max_displacement": 7.5}]}
    ],
    "potentials": {
      "en": [{"kind": "soft_coulomb", "lambda_sq": 1.0},
             {"kind": "soft_coulomb", "lambda_sq": 1.0}],
      "nn": [{"kind": "soft_coulomb", "lambda_sq": 1.0}]
    }
  },
  "vite": {"depth": 12, "dtau": 0.01, "steps": 6000, "seed": 1,
           "lambda_reg": 1e-06, "axes": "y"},
  "diagonalize": {"n_states": 3}
})"},
      {"benzene-argon", R"({
  "experiment": "classical-pite",
  "system": {
    "kind": "classical",
    "units": "mev_angstrom",
    "molecule": {"preset": "benzene"},
    "ilj": {
      "beta": 10.0, "m": 6.0,
      "bonds": {
        "CC": {"lambda_perp": 3.879, "lambda_par": 4.189, "D_perp": 3.895, "D_par": 4.910},
        "CH": {"lambda_perp": 3.641, "lambda_par": 3.851, "D_perp": 4.814, "D_par": 3.981}
      }
    },
    "probe": {
      "label": "Ar",
      "search": [
        {"axis": "x", "n_qn": 3, "base": -2.4, "max_displacement": 6.4},
        {"axis": "z", "n_qn": 3, "base": 3.2, "max_displacement": 3.2}
      ],
      "frozen": {"y": 0.0}
    }
  },
  "guess": {"kind": "uniform"},
  "pite": {"n_steps": 19, "dtau": "0.004 inv_meV", "shots": 100000, "seed": 11}
})"}};
  return presets;
}

inline std::string preset_config_text(const std::string& name) {
  const auto& presets = preset_configs();
  auto it = presets.find(name);
  if (it == presets.end()) {
    std::string names;
    for (const auto& [k, v] : presets) {
      if (!names.empty()) names += ", ";
      names += k;
    }
    throw validation_error("unknown preset '" + name + "' (available: " + names + ")");
  }
  return it->second;
}

} // namespace qgopt
