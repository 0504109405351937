#include "qgopt/pite.hpp"
#include "qgopt/spectral.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace qgopt;

namespace {

struct SmallSystem {
  RegisterLayout layout;
  GeometryGrid grid;
  PotentialTerms terms;
};

// scaled-down two-electron model: 8 grid points, 4 candidate bond lengths
SmallSystem small_system() {
  SmallSystem s;
  s.layout = build_layout(2, 1, 3, 9.0);
  s.grid.spatial_dim = 1;
  s.grid.base_positions = {{3.4, 0.0, 0.0}, {4.0, 0.0, 0.0}};
  s.grid.charges = {1.0, 1.0};
  s.grid.search = {SearchCoordinate{1, 0, 2, 4.0, 2.4}};
  s.terms.ee = PairPotential::soft(0.6);
  s.terms.en = {PairPotential::soft(0.7), PairPotential::soft(2.25)};
  s.terms.nn = {PairPotential::soft(2.35)};
  return s;
}

} // namespace

TEST_CASE("reference states carry the declared exchange parity") {
  const auto s = small_system();
  const int n = s.layout.points_per_axis();
  ReferenceSpec sym{ReferenceSpec::Kind::gaussian_symmetric, 3.0, {}};
  ReferenceSpec anti{ReferenceSpec::Kind::gaussian_antisymmetric, 3.0, {}};

  for (int j = 0; j < 4; ++j) {
    const auto a = prepare_reference({j}, sym, s.layout, s.grid);
    const auto b = prepare_reference({j}, anti, s.layout, s.grid);
    double norm_a = 0.0, norm_b = 0.0;
    complexd swap_a(0, 0), swap_b(0, 0);
    for (int k0 = 0; k0 < n; ++k0)
      for (int k1 = 0; k1 < n; ++k1) {
        const auto idx = static_cast<std::size_t>(k0 + n * k1);
        const auto swapped = static_cast<std::size_t>(k1 + n * k0);
        norm_a += std::norm(a[idx]);
        norm_b += std::norm(b[idx]);
        swap_a += std::conj(a[idx]) * a[swapped];
        swap_b += std::conj(b[idx]) * b[swapped];
      }
    CHECK(norm_a == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(norm_b == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(swap_a.real() == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(swap_b.real() == Catch::Approx(-1.0).epsilon(1e-12));
    for (int k = 0; k < n; ++k) CHECK(std::abs(b[static_cast<std::size_t>(k + n * k)]) == 0.0);
  }
}

TEST_CASE("symmetric reference overlaps the ground state") {
  const auto s = small_system();
  const auto pot = build_potential_diagonal(s.layout, s.grid, s.terms);
  ReferenceSpec sym{ReferenceSpec::Kind::gaussian_symmetric, 3.0, {}};
  const auto ref = prepare_reference({1}, sym, s.layout, s.grid);
  const auto two = diagonalize_two_electron_1d(s.layout, pot.column(1), 1);
  int parity = 0;
  const auto gs = two.ground_state_full(parity);
  CHECK(parity == 1);
  complexd overlap(0, 0);
  for (std::size_t k = 0; k < ref.size(); ++k)
    overlap += gs(static_cast<Eigen::Index>(k)) * ref[k];
  CHECK(std::abs(overlap) > 0.1);
}

TEST_CASE("custom reference provider is dimension checked") {
  const auto s = small_system();
  ReferenceSpec bad;
  bad.kind = ReferenceSpec::Kind::custom;
  bad.custom = [](const std::vector<int>&, const RegisterLayout&, const GeometryGrid&) {
    return std::vector<complexd>(3, complexd(1, 0));
  };
  CHECK_THROWS_AS(prepare_reference({0}, bad, s.layout, s.grid), validation_error);
}

TEST_CASE("input preparation distributes the guess weights") {
  const auto s = small_system();
  ReferenceSpec sym{ReferenceSpec::Kind::gaussian_symmetric, 3.0, {}};
  SECTION("uniform guess gives equal block weights") {
    const auto state = prepare_input(InitialGuess::uniform(4), sym, s.layout, s.grid);
    const auto w = extract_weights(state);
    for (int j = 0; j < 4; ++j) CHECK(w(j) == Catch::Approx(0.25).epsilon(1e-12));
  }
  SECTION("point mass yields a product state") {
    const auto state = prepare_input(InitialGuess::point(4, 2), sym, s.layout, s.grid);
    const auto w = extract_weights(state);
    CHECK(w(2) == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(w(0) == 0.0);
  }
  SECTION("weights round-trip through preparation") {
    InitialGuess g{{0.4, 0.3, 0.2, 0.1}};
    const auto w = extract_weights(prepare_input(g, sym, s.layout, s.grid));
    for (int j = 0; j < 4; ++j) CHECK(w(j) == Catch::Approx(g.weights[static_cast<std::size_t>(j)]).margin(1e-12));
  }
  SECTION("invalid guesses are rejected") {
    CHECK_THROWS_AS(InitialGuess{{0.5, 0.2}}.validate(), validation_error);
    CHECK_THROWS_AS(InitialGuess{{-0.1, 1.1}}.validate(), validation_error);
  }
}

TEST_CASE("argmax picks the largest weight with smallest-index ties") {
  Eigen::VectorXd w(3);
  w << 0.1, 0.7, 0.2;
  CHECK(argmax_geometry(w) == 1);
  Eigen::VectorXd uniform = Eigen::VectorXd::Constant(5, 0.2);
  CHECK(argmax_geometry(uniform) == 0);
}

TEST_CASE("histogram sampling is reproducible and converges") {
  Eigen::VectorXd w(4);
  w << 0.1, 0.2, 0.3, 0.4;
  SECTION("point mass sends every shot to one bin") {
    Eigen::VectorXd point = Eigen::VectorXd::Zero(4);
    point(2) = 1.0;
    const auto counts = sample_histogram(point, 1000, 5);
    CHECK(counts[2] == 1000);
  }
  SECTION("same seed, same counts") {
    const auto a = sample_histogram(w, 10000, 17);
    const auto b = sample_histogram(w, 10000, 17);
    CHECK(a == b);
  }
  SECTION("frequencies approach the weights at a million shots") {
    const long long shots = 1000000;
    const auto counts = sample_histogram(w, shots, 23);
    for (int j = 0; j < 4; ++j)
      CHECK(static_cast<double>(counts[static_cast<std::size_t>(j)]) / shots ==
            Catch::Approx(w(j)).margin(5e-3));
  }
}

TEST_CASE("classical weights follow the closed form") {
  SECTION("two candidates reproduce the logistic curve") {
    const std::vector<double> energies{-1.0, 1.5};
    ClassicalPiteOptions opt;
    opt.dtau = 0.05;
    opt.n_steps = 30;
    const auto rep = run_classical_pite(energies, InitialGuess::uniform(2), opt);
    for (int s = 0; s <= 30; ++s) {
      const double tau = 0.05 * s;
      const double expected = 1.0 / (1.0 + std::exp(-2.0 * (energies[1] - energies[0]) * tau));
      CHECK(rep.weights[static_cast<std::size_t>(s)][0] ==
            Catch::Approx(expected).epsilon(1e-12));
    }
  }
  SECTION("tau = 0 row is the initial guess") {
    const std::vector<double> energies{3.0, 1.0, 2.0};
    InitialGuess g{{0.5, 0.25, 0.25}};
    const auto rep = run_classical_pite(energies, g, ClassicalPiteOptions{});
    for (int j = 0; j < 3; ++j)
      CHECK(rep.weights[0][static_cast<std::size_t>(j)] ==
            Catch::Approx(g.weights[static_cast<std::size_t>(j)]).epsilon(1e-14));
  }
  SECTION("log-weight ratios are linear in tau") {
    const std::vector<double> energies{0.3, -0.6, 1.1, 0.0};
    ClassicalPiteOptions opt;
    opt.dtau = 0.07;
    opt.n_steps = 12;
    const auto rep = run_classical_pite(energies, InitialGuess::uniform(4), opt);
    for (int s = 1; s <= 12; ++s) {
      const double tau = 0.07 * s;
      for (int j = 1; j < 4; ++j) {
        const double lhs = std::log(rep.weights[static_cast<std::size_t>(s)][static_cast<std::size_t>(j)] /
                                    rep.weights[static_cast<std::size_t>(s)][0]);
        CHECK(lhs == Catch::Approx(-2.0 * (energies[static_cast<std::size_t>(j)] - energies[0]) * tau)
                         .margin(1e-12));
      }
    }
  }
  SECTION("success probabilities stay in (0, 1]") {
    const std::vector<double> energies{0.0, 5.0, 10.0};
    ClassicalPiteOptions opt;
    opt.dtau = 0.1;
    opt.n_steps = 5;
    const auto rep = run_classical_pite(energies, InitialGuess::uniform(3), opt);
    for (const auto& o : rep.outcomes) {
      CHECK(o.success_probability > 0.0);
      CHECK(o.success_probability <= 1.0);
    }
  }
}

TEST_CASE("spectral oracle limits") {
  const auto s = small_system();
  ReferenceSpec sym{ReferenceSpec::Kind::gaussian_symmetric, 3.0, {}};
  const auto guess = InitialGuess::uniform(4);
  SECTION("tau = 0 returns the guess") {
    const auto w = spectral_weight_oracle(s.layout, s.grid, s.terms, guess, sym, 0.0);
    for (int j = 0; j < 4; ++j) CHECK(w(j) == Catch::Approx(0.25).epsilon(1e-10));
  }
  SECTION("large tau concentrates on the best-overlap minimum") {
    const auto w = spectral_weight_oracle(s.layout, s.grid, s.terms, guess, sym, 400.0);
    // the candidate whose symmetric ground state is lowest takes all weight
    const auto pot = build_potential_diagonal(s.layout, s.grid, s.terms);
    int best = 0;
    double best_e = 1e300;
    for (int j = 0; j < 4; ++j) {
      const auto two = diagonalize_two_electron_1d(s.layout, pot.column(static_cast<std::uint64_t>(j)), 1);
      if (two.evals_sym(0) < best_e) {
        best_e = two.evals_sym(0);
        best = j;
      }
    }
    CHECK(w(best) == Catch::Approx(1.0).margin(1e-6));
  }
}

TEST_CASE("trotterized weights approach the oracle at first order") {
  const auto s = small_system();
  ReferenceSpec sym{ReferenceSpec::Kind::gaussian_symmetric, 3.0, {}};
  const auto guess = InitialGuess::uniform(4);
  const double tau = 1.2;
  const auto oracle = spectral_weight_oracle(s.layout, s.grid, s.terms, guess, sym, tau);

  auto trotter_weights = [&](int steps) {
    PiteOptions opt;
    opt.n_steps = steps;
    opt.schedule = TauSchedule::constant(tau / steps);
    const auto rep = run_pite(s.layout, s.grid, s.terms, guess, sym, opt);
    Eigen::VectorXd w(4);
    for (int j = 0; j < 4; ++j) w(j) = rep.weights.back()[static_cast<std::size_t>(j)];
    return w;
  };
  const double err_coarse = (trotter_weights(6) - oracle).cwiseAbs().maxCoeff();
  const double err_fine = (trotter_weights(12) - oracle).cwiseAbs().maxCoeff();
  CHECK(err_fine < err_coarse);
  CHECK(err_coarse / err_fine == Catch::Approx(2.0).margin(0.6));
}

TEST_CASE("pipeline report keeps normalized rows and success probabilities") {
  const auto s = small_system();
  ReferenceSpec sym{ReferenceSpec::Kind::gaussian_symmetric, 3.0, {}};
  PiteOptions opt;
  opt.n_steps = 6;
  opt.schedule = TauSchedule{0.1, 0.2, 4.0};
  opt.shots = 5000;
  opt.seed = 9;
  opt.ground_state_weights = true;
  const auto rep = run_pite(s.layout, s.grid, s.terms, InitialGuess::uniform(4), sym, opt);

  REQUIRE(rep.weights.size() == 7);
  for (const auto& row : rep.weights) {
    double sum = 0.0;
    for (double w : row) sum += w;
    CHECK(sum == Catch::Approx(1.0).margin(1e-10));
  }
  REQUIRE(rep.gs_weights.size() == 7);
  for (std::size_t r = 0; r < rep.weights.size(); ++r)
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(rep.gs_weights[r][j] <= rep.weights[r][j] + 1e-12);
  // ground-state content grows under imaginary time
  CHECK(rep.gs_weights.back()[rep.argmax.back()] > rep.gs_weights.front()[rep.argmax.back()]);
  CHECK(rep.cumulative_success > 0.0);
  CHECK(rep.cumulative_success <= 1.0);
  long long total = 0;
  for (auto c : rep.histogram) total += static_cast<long long>(c);
  CHECK(total == opt.shots);
  CHECK(rep.sampler == std::string(kSamplerName));
}

TEST_CASE("single-candidate search is degenerate but consistent") {
  auto s = small_system();
  s.grid.search.clear(); // one frozen geometry
  ReferenceSpec sym{ReferenceSpec::Kind::gaussian_symmetric, 3.0, {}};
  PiteOptions opt;
  opt.n_steps = 4;
  opt.schedule = TauSchedule::constant(0.2);
  const auto rep = run_pite(s.layout, s.grid, s.terms, InitialGuess::uniform(1), sym, opt);
  for (const auto& row : rep.weights) CHECK(row[0] == Catch::Approx(1.0).margin(1e-12));
  for (const auto& o : rep.outcomes) CHECK(o.energy_after < o.energy_before);
}
