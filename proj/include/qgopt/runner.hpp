#pragma once

#include "qgopt/config.hpp"
#include "qgopt/hamiltonian.hpp"
#include "qgopt/ilj.hpp"
#include "qgopt/pite.hpp"
#include "qgopt/propagator.hpp"
#include "qgopt/reports.hpp"
#include "qgopt/resources.hpp"
#include "qgopt/spectral.hpp"
#include "qgopt/version.hpp"
#include "qgopt/vite.hpp"

#include <chrono>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

namespace qgopt {

struct RunResult {
  json report;
  RunArtifacts artifacts;
  std::string summary;
};

namespace run_detail {

inline std::vector<std::string> geometry_labels(const GeometryGrid& grid) {
  std::vector<std::string> labels;
  for (std::uint64_t j = 0; j < grid.geometry_count(); ++j)
    labels.push_back(geometry_label(grid, j));
  return labels;
}

inline json candidate_json(const GeometryGrid& grid, std::uint64_t j) {
  json c;
  c["index"] = j;
  c["label"] = geometry_label(grid, j);
  const auto idx = grid.unflatten_geometry(j);
  c["coordinate_indices"] = idx;
  json coords = json::array();
  for (std::size_t s = 0; s < grid.search.size(); ++s)
    coords.push_back(grid.search[s].value(idx[s]));
  c["coordinates"] = coords;
  return c;
}

inline CsvTable weights_table(const std::vector<std::vector<double>>& rows,
                              const std::vector<std::string>& labels) {
  CsvTable t;
  t.header.push_back("step");
  for (const auto& l : labels) t.header.push_back("w_" + l);
  for (std::size_t s = 0; s < rows.size(); ++s) {
    std::vector<std::string> row{std::to_string(s)};
    for (double w : rows[s]) row.push_back(format_double(w));
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline CsvTable pite_trajectory_table(const PiteReport& rep) {
  CsvTable t;
  t.header = {"step", "dtau", "energy_before", "energy_after", "p_step", "p_cumulative"};
  double cumulative = 1.0;
  for (std::size_t k = 0; k < rep.outcomes.size(); ++k) {
    const auto& o = rep.outcomes[k];
    cumulative *= o.success_probability;
    t.rows.push_back({std::to_string(k + 1), format_double(o.dtau), format_double(o.energy_before),
                      format_double(o.energy_after), format_double(o.success_probability),
                      format_double(cumulative)});
  }
  return t;
}

inline json pite_report_json(const PiteReport& rep, const GeometryGrid& grid,
                             const std::string& experiment) {
  json r;
  r["experiment"] = experiment;
  r["geometry_labels"] = geometry_labels(grid);
  r["gamma"] = rep.gamma;
  r["e_shift"] = rep.e_shift;
  r["weights"] = rep.weights;
  if (!rep.gs_weights.empty()) r["ground_state_weights"] = rep.gs_weights;
  r["argmax"] = rep.argmax;
  json final_candidate = candidate_json(grid, rep.argmax.back());
  r["optimal_candidate"] = final_candidate;
  json per_step = json::array();
  for (const auto& o : rep.outcomes) {
    per_step.push_back({{"dtau", o.dtau},
                        {"energy_before", o.energy_before},
                        {"energy_after", o.energy_after},
                        {"success_probability", o.success_probability}});
  }
  r["steps"] = per_step;
  r["cumulative_success_probability"] = rep.cumulative_success;
  if (!rep.histogram.empty()) {
    r["histogram"] = {{"shots", rep.shots},
                      {"seed", rep.seed},
                      {"sampler", rep.sampler},
                      {"counts", rep.histogram}};
  }
  return r;
}

inline void add_histogram_csv(RunArtifacts& art, const PiteReport& rep,
                              const std::vector<std::string>& labels) {
  if (rep.histogram.empty()) return;
  CsvTable t;
  t.header = {"geometry", "count"};
  for (std::size_t j = 0; j < rep.histogram.size(); ++j)
    t.rows.push_back({labels[j], std::to_string(rep.histogram[j])});
  art.add("histogram.csv", t.render());
}

inline std::uint64_t two_sector_min_dim(const RegisterLayout& layout) {
  const auto n = static_cast<std::uint64_t>(layout.points_per_axis());
  return n * (n - 1) / 2; // antisymmetric sector is the smaller one
}

// Lowest levels of one candidate Hamiltonian, total energies, parity labels,
// and (optionally) the eigenvectors expanded to the full grid.
struct CandidateSpectrum {
  std::vector<double> energies;
  std::vector<int> parity;
  std::vector<Eigen::VectorXd> states;
};

inline CandidateSpectrum candidate_spectrum(const RegisterLayout& layout,
                                            const PotentialDiagonal& pot, std::uint64_t j,
                                            int n_states, bool want_states, int dense_cap) {
  CandidateSpectrum out;
  if (layout.n_e == 2 && layout.spatial_dim == 1) {
    const auto two = diagonalize_two_electron_1d(
        layout, pot.column(j),
        std::min<int>(n_states, static_cast<int>(two_sector_min_dim(layout))));
    // merge the two sectors in ascending order
    Eigen::Index is = 0, ia = 0;
    while (static_cast<int>(out.energies.size()) < n_states &&
           (is < two.evals_sym.size() || ia < two.evals_anti.size())) {
      const bool take_sym = ia >= two.evals_anti.size() ||
                            (is < two.evals_sym.size() && two.evals_sym(is) <= two.evals_anti(ia));
      if (take_sym) {
        out.energies.push_back(two.evals_sym(is));
        out.parity.push_back(1);
        if (want_states) out.states.push_back(two.expand(two.evecs_sym, is, true));
        ++is;
      } else {
        out.energies.push_back(two.evals_anti(ia));
        out.parity.push_back(-1);
        if (want_states) out.states.push_back(two.expand(two.evecs_anti, ia, false));
        ++ia;
      }
    }
    return out;
  }
  const auto h = dense_hamiltonian(layout, pot.column(j), dense_cap);
  const int m = std::min<int>(n_states, static_cast<int>(h.rows()));
  auto dec = diagonalize_lowest(h, m);
  dec.exchange_parity = exchange_parity_labels(dec.eigenvectors, layout);
  for (int i = 0; i < m; ++i) {
    out.energies.push_back(dec.eigenvalues(i));
    out.parity.push_back(dec.exchange_parity.empty() ? 0 : dec.exchange_parity[static_cast<std::size_t>(i)]);
    if (want_states) out.states.push_back(dec.eigenvectors.col(i));
  }
  return out;
}

} // namespace run_detail

// ---------------------------------------------------------------------------
// Experiment drivers
// ---------------------------------------------------------------------------

inline RunResult run_diagonalize_experiment(const ExperimentConfig& cfg) {
  const auto& sys = *cfg.quantum;
  const auto pot = build_potential_diagonal(sys.layout, sys.grid, sys.terms, cfg.threads);
  const std::uint64_t n_geom = pot.geometry_dim;
  const int n_states = cfg.diagonalize.n_states;

  std::vector<run_detail::CandidateSpectrum> spectra(n_geom);
  parallel_for(n_geom, cfg.threads, [&](std::uint64_t j0, std::uint64_t j1) {
    for (std::uint64_t j = j0; j < j1; ++j)
      spectra[j] = run_detail::candidate_spectrum(sys.layout, pot, j, n_states, false, kDefaultDenseCap);
  });

  std::uint64_t argmin = 0;
  for (std::uint64_t j = 1; j < n_geom; ++j)
    if (spectra[j].energies[0] < spectra[argmin].energies[0]) argmin = j;

  RunResult result;
  json& r = result.report;
  r["experiment"] = "diagonalize";
  r["n_states"] = n_states;
  json candidates = json::array();
  for (std::uint64_t j = 0; j < n_geom; ++j) {
    json c = run_detail::candidate_json(sys.grid, j);
    c["energies"] = spectra[j].energies;
    c["exchange_parity"] = spectra[j].parity;
    c["e_nn"] = pot.nn_per_geometry[j];
    candidates.push_back(std::move(c));
  }
  r["candidates"] = candidates;
  r["argmin"] = run_detail::candidate_json(sys.grid, argmin);
  r["argmin"]["ground_energy"] = spectra[argmin].energies[0];

  CsvTable energies;
  energies.header = {"geometry"};
  for (std::size_t c = 0; c < sys.grid.search.size(); ++c)
    energies.header.push_back("coordinate_" + std::to_string(c));
  for (int i = 0; i < n_states; ++i) energies.header.push_back("E_" + std::to_string(i));
  for (int i = 0; i < n_states; ++i) energies.header.push_back("parity_" + std::to_string(i));
  energies.header.push_back("e_nn");
  for (std::uint64_t j = 0; j < n_geom; ++j) {
    std::vector<std::string> row{geometry_label(sys.grid, j)};
    const auto idx = sys.grid.unflatten_geometry(j);
    for (std::size_t c = 0; c < sys.grid.search.size(); ++c)
      row.push_back(format_double(sys.grid.search[c].value(idx[c])));
    for (int i = 0; i < n_states; ++i)
      row.push_back(i < static_cast<int>(spectra[j].energies.size())
                        ? format_double(spectra[j].energies[static_cast<std::size_t>(i)])
                        : "");
    for (int i = 0; i < n_states; ++i)
      row.push_back(std::to_string(i < static_cast<int>(spectra[j].parity.size())
                                       ? spectra[j].parity[static_cast<std::size_t>(i)]
                                       : 0));
    row.push_back(format_double(pot.nn_per_geometry[j]));
    energies.rows.push_back(std::move(row));
  }
  result.artifacts.add("energies.csv", energies.render());

  // densities of the requested candidates (plus the electron-nucleus potential)
  for (std::uint64_t j : cfg.diagonalize.density_geometries) {
    if (j >= n_geom) throw bounds_error("diagonalize.density_geometries: index out of range");
    auto full = run_detail::candidate_spectrum(sys.layout, pot, j, cfg.diagonalize.density_states,
                                               true, kDefaultDenseCap);
    CsvTable t;
    t.header = {"x", "v_en"};
    for (std::size_t i = 0; i < full.states.size(); ++i)
      t.header.push_back("density_" + std::to_string(i));
    const auto nuclei = geometry_coordinates(j, sys.grid);
    const int n = sys.layout.points_per_axis();
    std::vector<Eigen::VectorXd> densities;
    for (const auto& s : full.states) densities.push_back(electron_density(s.data(), sys.layout));
    for (int k = 0; k < n; ++k) {
      std::vector<double> pos{sys.layout.coordinate(k)};
      double ven = 0.0;
      for (int nu = 0; nu < sys.grid.n_nucl(); ++nu)
        ven -= sys.grid.charges[nu] *
               sys.terms.en[static_cast<std::size_t>(nu)](
                   std::abs(pos[0] - nuclei[static_cast<std::size_t>(nu)][0]));
      std::vector<std::string> row{format_double(pos[0]), format_double(ven)};
      for (const auto& d : densities) row.push_back(format_double(d(k)));
      t.rows.push_back(std::move(row));
    }
    result.artifacts.add("density_" + geometry_label(sys.grid, j) + ".csv", t.render());
  }

  std::ostringstream os;
  os << "diagonalize: " << n_geom << " candidates, argmin at geometry "
     << geometry_label(sys.grid, argmin) << " (ground total energy "
     << format_double(spectra[argmin].energies[0]) << ")\n";
  result.summary = os.str();
  return result;
}

inline RunResult run_pite_experiment(const ExperimentConfig& cfg) {
  const auto& sys = *cfg.quantum;
  if (!cfg.schedule) throw validation_error("pite: missing schedule");
  PiteOptions opt;
  opt.n_steps = cfg.pite.n_steps;
  opt.schedule = *cfg.schedule;
  opt.gamma = cfg.pite.gamma;
  opt.e_shift = cfg.pite.e_shift;
  opt.shots = cfg.pite.shots;
  opt.seed = cfg.pite.seed;
  opt.ground_state_weights = cfg.pite.ground_state_weights;
  opt.threads = cfg.threads;
  const auto guess = cfg.guess.resolve(sys.grid.geometry_count());
  const PiteReport rep = run_pite(sys.layout, sys.grid, sys.terms, guess, cfg.reference, opt);

  RunResult result;
  const auto labels = run_detail::geometry_labels(sys.grid);
  result.report = run_detail::pite_report_json(rep, sys.grid, "pite");
  result.report["schedule"] = {{"dtau_min", cfg.schedule->dtau_min},
                               {"dtau_max", cfg.schedule->dtau_max},
                               {"kappa", cfg.schedule->kappa}};
  result.report["reference"] = {{"kind", cfg.reference.kind == ReferenceSpec::Kind::gaussian_symmetric
                                             ? "gaussian_symmetric"
                                             : "gaussian_antisymmetric"},
                                {"width", cfg.reference.width}};
  result.artifacts.add("weights.csv", run_detail::weights_table(rep.weights, labels).render());
  if (!rep.gs_weights.empty())
    result.artifacts.add("gs_weights.csv", run_detail::weights_table(rep.gs_weights, labels).render());
  result.artifacts.add("trajectory.csv", run_detail::pite_trajectory_table(rep).render());
  run_detail::add_histogram_csv(result.artifacts, rep, labels);

  std::ostringstream os;
  os << "pite: argmax geometry " << labels[rep.argmax.back()] << " after " << opt.n_steps
     << " steps (cumulative success probability " << format_double(rep.cumulative_success)
     << ")\n";
  result.summary = os.str();
  return result;
}

inline std::vector<double> classical_candidate_energies(const ClassicalSystemConfig& sys,
                                                        int threads) {
  if (sys.kind == ClassicalSystemConfig::Kind::ilj_probe) {
    const auto n = sys.probe.geometry_count();
    std::vector<double> energies(n);
    parallel_for(n, threads, [&](std::uint64_t j0, std::uint64_t j1) {
      for (std::uint64_t j = j0; j < j1; ++j) {
        const auto pos = geometry_coordinates(j, sys.probe);
        energies[j] = ilj_interaction_energy(pos[0], sys.molecule, sys.ilj);
      }
    });
    return energies;
  }
  const auto n = sys.charges.geometry_count();
  std::vector<double> energies(n);
  parallel_for(n, threads, [&](std::uint64_t j0, std::uint64_t j1) {
    for (std::uint64_t j = j0; j < j1; ++j) {
      const auto pos = geometry_coordinates(j, sys.charges);
      double e = 0.0;
      for (int nu = 0; nu < sys.charges.n_nucl(); ++nu)
        for (int np = nu + 1; np < sys.charges.n_nucl(); ++np) {
          const double zz = sys.charges.charges[nu] * sys.charges.charges[np];
          if (zz == 0.0) continue;
          double dist = 0.0;
          for (int d = 0; d < 3; ++d) {
            const double diff = pos[nu][d] - pos[np][d];
            dist += diff * diff;
          }
          e += zz * sys.nn[PotentialTerms::pair_index(nu, np)](std::sqrt(dist));
        }
      energies[j] = e;
    }
  });
  return energies;
}

inline RunResult run_classical_pite_experiment(const ExperimentConfig& cfg) {
  const auto& sys = *cfg.classical;
  const auto& grid =
      sys.kind == ClassicalSystemConfig::Kind::ilj_probe ? sys.probe : sys.charges;
  const auto energies = classical_candidate_energies(sys, cfg.threads);

  ClassicalPiteOptions opt;
  if (cfg.pite.dtau)
    opt.dtau = *cfg.pite.dtau;
  else
    opt.schedule = cfg.schedule;
  opt.n_steps = cfg.pite.n_steps;
  opt.gamma = cfg.pite.gamma;
  opt.e_shift = cfg.pite.e_shift;
  opt.shots = cfg.pite.shots;
  opt.seed = cfg.pite.seed;
  const auto guess = cfg.guess.resolve(grid.geometry_count());
  const PiteReport rep = run_classical_pite(energies, guess, opt);

  RunResult result;
  const auto labels = run_detail::geometry_labels(grid);
  result.report = run_detail::pite_report_json(rep, grid, "classical-pite");
  result.report["candidate_energies"] = energies;
  result.artifacts.add("weights.csv", run_detail::weights_table(rep.weights, labels).render());
  result.artifacts.add("trajectory.csv", run_detail::pite_trajectory_table(rep).render());
  run_detail::add_histogram_csv(result.artifacts, rep, labels);

  CsvTable et;
  et.header = {"geometry"};
  for (std::size_t c = 0; c < grid.search.size(); ++c)
    et.header.push_back("coordinate_" + std::to_string(c));
  et.header.push_back("energy");
  for (std::uint64_t j = 0; j < energies.size(); ++j) {
    std::vector<std::string> row{geometry_label(grid, j)};
    const auto idx = grid.unflatten_geometry(j);
    for (std::size_t c = 0; c < grid.search.size(); ++c)
      row.push_back(format_double(grid.search[c].value(idx[c])));
    row.push_back(format_double(energies[j]));
    et.rows.push_back(std::move(row));
  }
  result.artifacts.add("energies.csv", et.render());

  std::ostringstream os;
  os << "classical-pite: argmax geometry " << labels[rep.argmax.back()] << " after "
     << cfg.pite.n_steps << " steps\n";
  result.summary = os.str();
  return result;
}

inline RunResult run_vite_experiment(const ExperimentConfig& cfg) {
  const auto& sys = *cfg.quantum;
  ViteOptions opt;
  opt.depth = cfg.vite.depth;
  opt.dtau = cfg.vite.dtau;
  opt.steps = cfg.vite.steps;
  opt.seed = cfg.vite.seed;
  opt.lambda_reg = cfg.vite.lambda_reg;
  opt.axis = cfg.vite.axis;
  opt.track_geometry = cfg.vite.track_geometry;
  opt.track_states = cfg.vite.track_states;
  opt.threads = cfg.threads;
  const ViteResult res = run_vite(sys.layout, sys.grid, sys.terms, opt);

  RunResult result;
  const auto labels = run_detail::geometry_labels(sys.grid);
  const std::string tracked = labels[static_cast<std::size_t>(res.tracked_geometry)];
  json& r = result.report;
  r["experiment"] = "vite";
  r["geometry_labels"] = labels;
  r["ansatz"] = {{"n_qubits", res.ansatz.n_qubits},
                 {"depth", res.ansatz.depth},
                 {"n_params", res.ansatz.n_params()},
                 {"axis", std::string(1, cfg.vite.axis)},
                 {"layers", "initial rotation layer + depth x [full CZ entangler; rotation layer]"}};
  r["dtau"] = opt.dtau;
  r["steps"] = opt.steps;
  r["seed"] = res.seed;
  r["rng"] = res.rng;
  r["lambda_reg"] = opt.lambda_reg;
  r["tracked_geometry"] = tracked;
  r["exact_energy"] = res.exact_energy;
  r["exact_energies_per_geometry"] = res.exact_energies;
  r["final_energy_error"] = res.trajectory.back().energy_error;
  r["final_weights"] = res.trajectory.back().weights;
  r["final_component_weights"] = res.trajectory.back().component_weights;

  static const char* kComponentNames[] = {"gs", "ex1", "ex2"};
  CsvTable t;
  t.header = {"step", "energy", "energy_error"};
  for (const auto& l : labels) t.header.push_back("w_" + l);
  for (std::size_t i = 0; i < res.trajectory.front().component_weights.size(); ++i)
    t.header.push_back("w_J" + tracked + "_" +
                       (i < 3 ? kComponentNames[i] : "ex" + std::to_string(i)));
  std::vector<std::vector<double>> weight_rows;
  for (std::size_t s = 0; s < res.trajectory.size(); ++s) {
    const auto& rec = res.trajectory[s];
    std::vector<std::string> row{std::to_string(s), format_double(rec.energy),
                                 format_double(rec.energy_error)};
    for (double w : rec.weights) row.push_back(format_double(w));
    for (double w : rec.component_weights) row.push_back(format_double(w));
    t.rows.push_back(std::move(row));
    weight_rows.push_back(rec.weights);
  }
  result.artifacts.add("trajectory.csv", t.render());
  result.artifacts.add("weights.csv", run_detail::weights_table(weight_rows, labels).render());

  std::ostringstream os;
  os << "vite: final w_J" << tracked << " = "
     << format_double(res.trajectory.back().weights[static_cast<std::size_t>(res.tracked_geometry)])
     << ", energy error " << format_double(res.trajectory.back().energy_error) << "\n";
  result.summary = os.str();
  return result;
}

inline RunResult run_resources_experiment(const ExperimentConfig& cfg) {
  const auto& rc = cfg.resources;
  const auto naive = depth_report(rc.n_e, rc.n_nucl, rc.n_qe, rc.n_qn, rc.cost, false);
  const auto redundant = depth_report(rc.n_e, rc.n_nucl, rc.n_qe, rc.n_qn, rc.cost, true);

  auto report_json = [](const DepthReport& rep) {
    json terms = json::array();
    for (const auto& t : rep.terms)
      terms.push_back({{"term", t.term},
                       {"gates", t.gates},
                       {"depth", t.depth},
                       {"asymptotic", t.asymptotic}});
    return json{{"terms", terms},
                {"position_depth", rep.position_depth},
                {"total_depth", rep.total_depth}};
  };

  RunResult result;
  json& r = result.report;
  r["experiment"] = "resources";
  r["n_e"] = rc.n_e;
  r["n_nucl"] = rc.n_nucl;
  r["n_qe"] = rc.n_qe;
  r["n_qn"] = rc.n_qn;
  const auto sizes = distance_register_sizes(rc.n_qe, rc.n_qn, rc.cost.size_multiplier);
  r["distance_registers"] = {{"ee", sizes.ee}, {"en", sizes.en}, {"nn", sizes.nn}};
  r["naive"] = report_json(naive);
  r["redundant"] = report_json(redundant);
  r["fully_parallel_note"] =
      "O(poly(n_qe)) depth attainable with O(n_e^2 n_qe) extra qubits (asymptotic class only)";

  std::ostringstream table;
  table << "scheme     term   gates  depth      asymptotic\n";
  for (const auto* rep : {&naive, &redundant}) {
    for (const auto& t : rep->terms)
      table << (rep->redundant ? "redundant  " : "naive      ") << t.term << std::string(7 - t.term.size(), ' ')
            << t.gates << "\t" << format_double(t.depth) << "\t" << t.asymptotic << "\n";
    table << (rep->redundant ? "redundant  " : "naive      ") << "total  -\t"
          << format_double(rep->total_depth) << "\tposition max(ee,nn)+en+ext plus kinetic\n";
  }
  result.summary = table.str();

  if (rc.emit_netlists) {
    if (rc.n_e >= 2) {
      result.artifacts.add("schedule_ee.txt", schedule_ee(rc.n_e, rc.cost.ee_registers).netlist());
      result.artifacts.add("schedule_ee_redundant.txt", schedule_ee_redundant(rc.n_e).netlist());
    }
    if (rc.n_e >= rc.n_nucl)
      result.artifacts.add("schedule_en.txt", schedule_en(rc.n_e, rc.n_nucl).netlist());
    if (rc.n_nucl >= 2) result.artifacts.add("schedule_nn.txt", schedule_nn(rc.n_nucl).netlist());
  }
  return result;
}

inline RunResult execute_experiment(const ExperimentConfig& cfg) {
  RunResult result;
  if (cfg.experiment == "diagonalize")
    result = run_diagonalize_experiment(cfg);
  else if (cfg.experiment == "pite")
    result = run_pite_experiment(cfg);
  else if (cfg.experiment == "classical-pite")
    result = run_classical_pite_experiment(cfg);
  else if (cfg.experiment == "vite")
    result = run_vite_experiment(cfg);
  else if (cfg.experiment == "resources")
    result = run_resources_experiment(cfg);
  else
    throw validation_error("unknown experiment '" + cfg.experiment + "'");
  result.artifacts.files.insert(result.artifacts.files.begin(),
                                {"report.json", result.report.dump(1) + "\n"});
  return result;
}

/// Writes all artifacts plus the run manifest (config hash, seed, versions,
/// wall time, output list). The manifest lands last, atomically.
inline void write_run(const RunResult& result, const ExperimentConfig& cfg,
                      const std::filesystem::path& out_dir, double wall_seconds) {
  result.artifacts.write_all(out_dir);
  json manifest;
  char hash[32];
  std::snprintf(hash, sizeof(hash), "fnv1a64:%016llx",
                static_cast<unsigned long long>(fnv1a64(cfg.raw.dump())));
  manifest["config_hash"] = hash;
  manifest["experiment"] = cfg.experiment;
  if (cfg.experiment == "vite")
    manifest["seed"] = cfg.vite.seed;
  else if (cfg.experiment == "pite" || cfg.experiment == "classical-pite")
    manifest["seed"] = cfg.pite.seed;
  manifest["versions"] = {{"qgopt", kVersion},
                          {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                        std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                        std::to_string(EIGEN_MINOR_VERSION)}};
  manifest["wall_time_seconds"] = wall_seconds;
  json outputs = json::array();
  for (const auto& [name, content] : result.artifacts.files) outputs.push_back(name);
  manifest["outputs"] = outputs;
  write_file_atomic(out_dir / "manifest.json", manifest.dump(1) + "\n");
}

} // namespace qgopt
