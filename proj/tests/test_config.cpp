#include "qgopt/config.hpp"
#include "qgopt/runner.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace qgopt;

namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  REQUIRE(is.good());
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

} // namespace

TEST_CASE("built-in presets parse and validate cleanly") {
  for (const auto& [name, text] : preset_configs()) {
    INFO("preset " << name);
    CHECK(validate_config(text).empty());
    const auto cfg = parse_experiment_config(text);
    CHECK(!cfg.experiment.empty());
  }
}

TEST_CASE("checked-in preset files match the built-in configurations") {
  const std::filesystem::path dir = std::filesystem::path(QGOPT_SOURCE_DIR) / "presets";
  for (const auto& [name, text] : preset_configs()) {
    const auto file = dir / (name + ".json");
    INFO("preset file " << file);
    REQUIRE(std::filesystem::exists(file));
    CHECK(json::parse(read_file(file)) == json::parse(text));
  }
}

TEST_CASE("preset lookup failures name the available presets") {
  CHECK_THROWS_AS(preset_config_text("nope"), validation_error);
  try {
    preset_config_text("nope");
  } catch (const validation_error& e) {
    CHECK(std::string(e.what()).find("lih-1d") != std::string::npos);
  }
}

TEST_CASE("schema violations carry field-level messages") {
  auto base = json::parse(preset_config_text("lih-1d"));
  SECTION("n_qe = 0 is rejected naming the field") {
    auto bad = base;
    bad["system"]["layout"]["n_qe"] = 0;
    const auto diags = validate_config(bad.dump());
    REQUIRE(!diags.empty());
    CHECK(diags.front().find("n_qe") != std::string::npos);
  }
  SECTION("inverted schedule bounds are rejected") {
    auto bad = base;
    bad["schedule"]["dtau_min"] = 0.5;
    const auto diags = validate_config(bad.dump());
    REQUIRE(!diags.empty());
    CHECK(diags.front().find("dtau_min") != std::string::npos);
  }
  SECTION("unknown keys are rejected with their path") {
    auto bad = base;
    bad["system"]["layout"]["n_queue"] = 3;
    const auto diags = validate_config(bad.dump());
    REQUIRE(!diags.empty());
    CHECK(diags.front().find("n_queue") != std::string::npos);
  }
  SECTION("multiple independent violations are all listed") {
    auto bad = base;
    bad["system"]["layout"]["n_qe"] = 0;
    bad["schedule"]["kappa"] = -1.0;
    const auto diags = validate_config(bad.dump());
    CHECK(diags.size() >= 2);
  }
  SECTION("gamma outside its range") {
    auto bad = base;
    bad["pite"]["gamma"] = 1.5;
    CHECK(!validate_config(bad.dump()).empty());
  }
}

TEST_CASE("quantities carry unit tags where ambiguous") {
  auto base = json::parse(preset_config_text("benzene-argon"));
  SECTION("the classical step accepts its inverse-energy unit") {
    const auto cfg = parse_experiment_config(base.dump());
    REQUIRE(cfg.pite.dtau.has_value());
    CHECK(*cfg.pite.dtau == Catch::Approx(0.004));
  }
  SECTION("a mismatched unit is rejected") {
    auto bad = base;
    bad["pite"]["dtau"] = "0.004 au";
    CHECK(!validate_config(bad.dump()).empty());
  }
  SECTION("plain numbers pass through") {
    auto ok = base;
    ok["pite"]["dtau"] = 0.004;
    CHECK(validate_config(ok.dump()).empty());
  }
}

TEST_CASE("guess configurations resolve against the geometry count") {
  GuessConfig g;
  g.kind = GuessConfig::Kind::uniform;
  CHECK(g.resolve(4).weights == std::vector<double>{0.25, 0.25, 0.25, 0.25});
  g.kind = GuessConfig::Kind::point;
  g.point_index = 2;
  CHECK(g.resolve(4).weights[2] == 1.0);
  g.kind = GuessConfig::Kind::weights;
  g.weights = {0.5, 0.5};
  CHECK_THROWS_AS(g.resolve(4), validation_error);
}

TEST_CASE("experiment sections are cross-checked") {
  auto base = json::parse(preset_config_text("lih-1d"));
  SECTION("pite needs a schedule") {
    auto bad = base;
    bad.erase("schedule");
    CHECK_THROWS_AS(parse_experiment_config(bad.dump()), validation_error);
  }
  SECTION("vite runs on the quantum system sections") {
    auto ok = json::parse(preset_config_text("h2plus-1d"));
    const auto cfg = parse_experiment_config(ok.dump());
    CHECK(cfg.experiment == "vite");
    CHECK(cfg.vite.depth == 12);
    CHECK(cfg.vite.steps == 6000);
  }
  SECTION("classical pite refuses a quantum-only config") {
    auto bad = base;
    bad["experiment"] = "classical-pite";
    CHECK_THROWS_AS(parse_experiment_config(bad.dump()), validation_error);
  }
}

TEST_CASE("classical candidate energies match direct evaluation") {
  const auto cfg = parse_experiment_config(preset_config_text("benzene-argon"));
  REQUIRE(cfg.classical.has_value());
  const auto energies = classical_candidate_energies(*cfg.classical, 1);
  REQUIRE(energies.size() == 64);
  const auto mol = benzene_geometry();
  const auto params = benzene_argon_ilj_params();
  for (std::uint64_t j : {0ULL, 11ULL, 27ULL, 63ULL}) {
    const auto pos = geometry_coordinates(j, cfg.classical->probe);
    CHECK(energies[j] == Catch::Approx(ilj_interaction_energy(pos[0], mol, params)).epsilon(1e-13));
  }
}

TEST_CASE("point-charge classical systems use the pair potential") {
  const std::string text = R"({
    "experiment": "classical-pite",
    "system": {
      "kind": "classical",
      "units": "au",
      "nuclei": [
        {"charge": 1.0, "position": [0.0, 0.0, 0.0]},
        {"charge": 1.0, "position": [1.0, 0.0, 0.0],
         "search": [{"axis": "x", "n_qn": 2, "base": 0.5, "max_displacement": 2.0}]}
      ],
      "potentials": {"nn": {"kind": "soft_coulomb", "lambda_sq": 1.0}}
    },
    "pite": {"n_steps": 3, "dtau": 0.1, "seed": 1}
  })";
  const auto cfg = parse_experiment_config(text);
  const auto energies = classical_candidate_energies(*cfg.classical, 1);
  REQUIRE(energies.size() == 4);
  for (int j = 0; j < 4; ++j)
    CHECK(energies[static_cast<std::size_t>(j)] ==
          Catch::Approx(soft_coulomb(0.5 + 0.5 * j, 1.0)).epsilon(1e-14));
}

TEST_CASE("experiment execution produces the named artifacts") {
  SECTION("classical pite") {
    auto cfg = parse_experiment_config(preset_config_text("benzene-argon"));
    cfg.pite.shots = 1000;
    const auto result = execute_experiment(cfg);
    std::vector<std::string> names;
    for (const auto& [name, content] : result.artifacts.files) names.push_back(name);
    CHECK(std::find(names.begin(), names.end(), "report.json") != names.end());
    CHECK(std::find(names.begin(), names.end(), "weights.csv") != names.end());
    CHECK(std::find(names.begin(), names.end(), "trajectory.csv") != names.end());
    CHECK(result.report["optimal_candidate"]["label"] == "3_1");
  }
  SECTION("resources") {
    json j{{"experiment", "resources"},
           {"resources", {{"n_e", 4}, {"n_nucl", 3}, {"n_qe", 6}, {"n_qn", 3}}}};
    const auto cfg = parse_experiment_config(j);
    const auto result = execute_experiment(cfg);
    CHECK(result.report["naive"]["terms"][0]["gates"] == 6);
    CHECK(result.summary.find("V_ee") != std::string::npos);
    std::vector<std::string> names;
    for (const auto& [name, content] : result.artifacts.files) names.push_back(name);
    CHECK(std::find(names.begin(), names.end(), "schedule_en.txt") != names.end());
  }
  SECTION("diagonalize on a reduced quantum system") {
    const std::string text = R"({
      "experiment": "diagonalize",
      "system": {
        "kind": "quantum",
        "units": "au",
        "layout": {"n_e": 2, "spatial_dim": 1, "n_qe": 3, "cell_length": 9.0},
        "nuclei": [
          {"charge": 1.0, "position": [3.4]},
          {"charge": 1.0, "position": [4.0],
           "search": [{"axis": "x", "n_qn": 1, "max_displacement": 2.0}]}
        ],
        "potentials": {
          "ee": {"kind": "soft_coulomb", "lambda_sq": 0.6},
          "en": [{"kind": "soft_coulomb", "lambda_sq": 0.7},
                 {"kind": "soft_coulomb", "lambda_sq": 2.25}],
          "nn": [{"kind": "soft_coulomb", "lambda_sq": 2.35}]
        }
      },
      "diagonalize": {"n_states": 2, "density_geometries": [0], "density_states": 2}
    })";
    const auto cfg = parse_experiment_config(text);
    const auto result = execute_experiment(cfg);
    CHECK(result.report["candidates"].size() == 2);
    bool has_density = false;
    for (const auto& [name, content] : result.artifacts.files)
      if (name.rfind("density_", 0) == 0) has_density = true;
    CHECK(has_density);
  }
}

TEST_CASE("manifest is written with hash, versions and file list") {
  auto cfg = parse_experiment_config(preset_config_text("benzene-argon"));
  cfg.pite.shots = 0;
  auto result = execute_experiment(cfg);
  const auto dir = std::filesystem::temp_directory_path() / "qgopt_manifest_test";
  std::filesystem::remove_all(dir);
  write_run(result, cfg, dir, 1.25);
  const auto manifest = json::parse(read_file(dir / "manifest.json"));
  CHECK(manifest["experiment"] == "classical-pite");
  CHECK(manifest["wall_time_seconds"] == 1.25);
  CHECK(manifest["versions"]["qgopt"] == kVersion);
  CHECK(manifest["config_hash"].get<std::string>().rfind("fnv1a64:", 0) == 0);
  bool listed = false;
  for (const auto& f : manifest["outputs"])
    if (f == "report.json") listed = true;
  CHECK(listed);
  std::filesystem::remove_all(dir);
}
