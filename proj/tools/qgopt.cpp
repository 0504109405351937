#include "qgopt/config.hpp"
#include "qgopt/runner.hpp"
#include "qgopt/version.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

struct CommonArgs {
  std::string preset;
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<int> steps;
  std::optional<double> dtau;
  std::optional<double> dtau_min;
  std::optional<double> dtau_max;
  std::optional<double> dtau_kappa;
};

void add_common_options(CLI::App* sub, CommonArgs& args) {
  sub->add_option("--preset", args.preset, "built-in experiment preset name");
  sub->add_option("--config", args.config_path, "path to a JSON config file");
  sub->add_option("--out", args.out_dir, "output directory");
  sub->add_option("--seed", args.seed, "seed override");
  sub->add_option("--threads", args.threads, "worker thread cap (results are thread-count independent)");
  sub->add_option("--steps", args.steps, "step-count override");
  sub->add_option("--dtau", args.dtau, "constant imaginary-time step override");
  sub->add_option("--dtau-min", args.dtau_min, "schedule dtau_min override");
  sub->add_option("--dtau-max", args.dtau_max, "schedule dtau_max override");
  sub->add_option("--dtau-kappa", args.dtau_kappa, "schedule kappa override");
}

std::string load_config_text(const CommonArgs& args) {
  if (!args.preset.empty() && !args.config_path.empty())
    throw qgopt::validation_error("use either --preset or --config, not both");
  if (!args.preset.empty()) return qgopt::preset_config_text(args.preset);
  if (!args.config_path.empty()) {
    std::ifstream is(args.config_path, std::ios::binary);
    if (!is) throw qgopt::validation_error("cannot read config file " + args.config_path);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
  }
  throw qgopt::validation_error("missing --preset or --config");
}

qgopt::json apply_overrides(qgopt::json j, const std::string& experiment, const CommonArgs& args) {
  j["experiment"] = experiment;
  if (args.seed) {
    if (experiment == "vite")
      j["vite"]["seed"] = *args.seed;
    else
      j["pite"]["seed"] = *args.seed;
  }
  if (args.steps) {
    if (experiment == "vite")
      j["vite"]["steps"] = *args.steps;
    else
      j["pite"]["n_steps"] = *args.steps;
  }
  if (args.dtau) {
    if (experiment == "vite")
      j["vite"]["dtau"] = *args.dtau;
    else
      j["pite"]["dtau"] = *args.dtau;
  }
  if (args.dtau_min) j["schedule"]["dtau_min"] = *args.dtau_min;
  if (args.dtau_max) j["schedule"]["dtau_max"] = *args.dtau_max;
  if (args.dtau_kappa) j["schedule"]["kappa"] = *args.dtau_kappa;
  if (args.threads) j["threads"] = *args.threads;
  if (!args.out_dir.empty()) j["output"]["directory"] = args.out_dir;
  return j;
}

int run_subcommand(const std::string& experiment, const CommonArgs& args) {
  const auto text = load_config_text(args);
  qgopt::json j = qgopt::json::parse(text);
  j = apply_overrides(std::move(j), experiment, args);
  const auto cfg = qgopt::parse_experiment_config(j);

  const auto t0 = std::chrono::steady_clock::now();
  qgopt::RunResult result = qgopt::execute_experiment(cfg);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  qgopt::write_run(result, cfg, cfg.output_directory, wall);
  std::cout << result.summary;
  std::cout << "wrote " << result.artifacts.files.size() + 1 << " files to "
            << cfg.output_directory << "\n";
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"grid-based simulator for quantum geometry optimization"};
  app.set_version_flag("--version", qgopt::kVersion);
  app.require_subcommand(1);

  std::map<std::string, CommonArgs> args;
  for (const char* name : {"diagonalize", "pite", "vite", "classical-pite", "validate"}) {
    auto* sub = app.add_subcommand(name);
    add_common_options(sub, args[name]);
  }

  auto& res_args = args["resources"];
  auto* res = app.add_subcommand("resources", "circuit schedules and depth accounting");
  add_common_options(res, res_args);
  std::optional<int> res_ne, res_nnucl, res_nqe, res_nqn;
  res->add_option("--ne", res_ne, "electron count");
  res->add_option("--nnucl", res_nnucl, "nucleus count");
  res->add_option("--nqe", res_nqe, "qubits per electron direction");
  res->add_option("--nqn", res_nqn, "qubits per nuclear coordinate");

  CLI11_PARSE(app, argc, argv);
  const std::string sub = app.get_subcommands().front()->get_name();

  try {
    if (sub == "validate") {
      const auto text = load_config_text(args[sub]);
      const auto diags = qgopt::validate_config(text);
      if (diags.empty()) {
        std::cout << "config is valid\n";
        return 0;
      }
      for (const auto& d : diags) std::cout << "violation: " << d << "\n";
      return 2;
    }
    if (sub == "resources") {
      qgopt::json j;
      if (!res_args.preset.empty() || !res_args.config_path.empty())
        j = qgopt::json::parse(load_config_text(res_args));
      else
        j = qgopt::json{{"resources", qgopt::json::object()}};
      j["experiment"] = "resources";
      if (res_ne) j["resources"]["n_e"] = *res_ne;
      if (res_nnucl) j["resources"]["n_nucl"] = *res_nnucl;
      if (res_nqe) j["resources"]["n_qe"] = *res_nqe;
      if (res_nqn) j["resources"]["n_qn"] = *res_nqn;
      if (res_args.threads) j["threads"] = *res_args.threads;
      if (!res_args.out_dir.empty()) j["output"]["directory"] = res_args.out_dir;
      const auto cfg = qgopt::parse_experiment_config(j);
      const auto t0 = std::chrono::steady_clock::now();
      qgopt::RunResult result = qgopt::execute_experiment(cfg);
      const double wall =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      qgopt::write_run(result, cfg, cfg.output_directory, wall);
      std::cout << result.summary;
      return 0;
    }
    return run_subcommand(sub, args[sub]);
  } catch (const qgopt::capacity_error& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return 3;
  } catch (const qgopt::numerical_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 4;
  } catch (const qgopt::validation_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
