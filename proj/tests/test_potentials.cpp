#include "qgopt/ilj.hpp"
#include "qgopt/potentials.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace qgopt;

TEST_CASE("soft_coulomb matches direct evaluation") {
  CHECK(soft_coulomb(0.0, 0.6) == Catch::Approx(1.0 / std::sqrt(0.6)).epsilon(1e-15));
  CHECK(soft_coulomb(0.0, 0.6) == Catch::Approx(1.2909944).epsilon(1e-7));
  CHECK(soft_coulomb(1.0, 0.6) == Catch::Approx(1.0 / std::sqrt(1.6)).epsilon(1e-15));
  CHECK(soft_coulomb(1.0, 0.6) == Catch::Approx(0.7905694).epsilon(1e-7));
  CHECK_THROWS_AS(soft_coulomb(-1.0, 0.6), validation_error);
  CHECK_THROWS_AS(soft_coulomb(1.0, 0.0), validation_error);
}

TEST_CASE("soft_coulomb decreases monotonically and is bounded by 1/lambda") {
  const double lambda_sq = 0.7;
  double prev = soft_coulomb(0.0, lambda_sq);
  CHECK(prev <= 1.0 / std::sqrt(lambda_sq) + 1e-15);
  for (double r = 0.1; r < 50.0; r += 0.1) {
    const double v = soft_coulomb(r, lambda_sq);
    CHECK(v < prev);
    prev = v;
  }
  CHECK(soft_coulomb(1e8, lambda_sq) < 1e-7);
}

TEST_CASE("two-ion electron potential from the model parameters") {
  const double x_h = 0.0, x_li = 1.55;
  // independent direct evaluation of the defining formula
  const double expected = -(1.0 / std::sqrt(0.7) + 1.0 / std::sqrt(2.25 + 1.55 * 1.55));
  CHECK(lih_electron_nucleus_potential(x_h, x_h, x_li) == Catch::Approx(expected).epsilon(1e-15));
  CHECK(expected == Catch::Approx(-1.6588177).epsilon(1e-7));

  SECTION("reflection symmetry in the distances") {
    const double a = 0.37;
    CHECK(lih_electron_nucleus_potential(x_h + a, x_h, x_li) ==
          Catch::Approx(-(soft_coulomb(a, 0.7) + soft_coulomb(std::abs(1.55 - a), 2.25)))
              .epsilon(1e-14));
    // mirroring the whole configuration leaves the value unchanged
    CHECK(lih_electron_nucleus_potential(0.4, 0.0, 1.55) ==
          Catch::Approx(lih_electron_nucleus_potential(-0.4, 0.0, -1.55)).epsilon(1e-14));
  }
  SECTION("both nuclei far away gives zero") {
    CHECK(std::abs(lih_electron_nucleus_potential(0.0, 1e9, -1e9)) < 1e-8);
  }
}

TEST_CASE("pair potential kinds evaluate and guard their domains") {
  const auto soft = PairPotential::soft(0.6);
  CHECK(soft(2.0) == Catch::Approx(1.0 / std::sqrt(0.6 + 4.0)));

  const auto bare = PairPotential::bare();
  CHECK(bare(2.0) == 0.5);
  CHECK_THROWS_AS(bare(0.0), numerical_error);
  try {
    bare(0.0);
  } catch (const numerical_error& e) {
    CHECK(std::string(e.what()).find("softened") != std::string::npos);
  }

  const auto poly = PairPotential::polynomial({1.0, -2.0, 0.5});
  CHECK(poly(3.0) == Catch::Approx(1.0 - 6.0 + 4.5));

  const auto tab = PairPotential::tabulated({0.0, 1.0, 2.0}, {5.0, 3.0, 2.0});
  CHECK(tab(0.5) == Catch::Approx(4.0));
  CHECK(tab(2.0) == Catch::Approx(2.0));
  CHECK_THROWS_AS(tab(2.5), bounds_error);
  CHECK_THROWS_AS(PairPotential::tabulated({1.0, 0.5}, {1.0, 2.0}), validation_error);
}

TEST_CASE("atom-bond well depths at the parallel and perpendicular anchors") {
  IljBondParams p{3.895, 4.910, 3.879, 4.189};
  const double beta = 10.0, m = 6.0;
  SECTION("collinear at s = 1 gives -D_par") {
    // bond along x, atom on the bond axis at distance lambda_par
    const double v = ilj_atom_bond({4.189, 0.0, 0.0}, {0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, p, beta, m);
    CHECK(v == Catch::Approx(-p.D_par).epsilon(1e-12));
  }
  SECTION("perpendicular at s = 1 gives -D_perp") {
    const double v = ilj_atom_bond({0.0, 0.0, 3.879}, {0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, p, beta, m);
    CHECK(v == Catch::Approx(-p.D_perp).epsilon(1e-12));
    CHECK(v == Catch::Approx(-3.895).epsilon(1e-12));
  }
  SECTION("probe at the bond center is singular") {
    CHECK_THROWS_AS(ilj_atom_bond({0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, p, beta, m),
                    numerical_error);
  }
}

TEST_CASE("atom-bond radial profile has a single well") {
  IljBondParams p{4.814, 3.981, 3.641, 3.851};
  for (double angle : {0.0, 0.7, M_PI / 2}) {
    // fixed angle: sweep the distance, count derivative sign changes
    const Vec3 dir{1.0, 0.0, 0.0};
    auto value = [&](double s_times_lambda) {
      const Vec3 atom{s_times_lambda * std::cos(angle), s_times_lambda * std::sin(angle), 0.0};
      return ilj_atom_bond(atom, {0.0, 0.0, 0.0}, dir, p, 10.0, 6.0);
    };
    int sign_changes = 0;
    double prev_delta = 0.0;
    double prev = value(1.5);
    for (double r = 1.51; r < 30.0; r += 0.01) {
      const double cur = value(r);
      const double delta = cur - prev;
      if (prev_delta != 0.0 && delta != 0.0 && (delta > 0) != (prev_delta > 0)) ++sign_changes;
      if (delta != 0.0) prev_delta = delta;
      prev = cur;
    }
    CHECK(sign_changes == 1);
  }
}

TEST_CASE("benzene geometry matches its construction rules") {
  const auto mol = benzene_geometry();
  REQUIRE(mol.atoms.size() == 12);
  REQUIRE(mol.bonds.size() == 12);
  // two C-H bonds along the y axis
  CHECK(mol.atoms[0][0] == Catch::Approx(0.0).margin(1e-12));
  CHECK(mol.atoms[0][1] == Catch::Approx(1.39).epsilon(1e-12));
  CHECK(mol.atoms[6][1] == Catch::Approx(2.48).epsilon(1e-12));
  for (const auto& b : mol.bonds) {
    const auto& ra = mol.atoms[static_cast<std::size_t>(b.a)];
    const auto& rb = mol.atoms[static_cast<std::size_t>(b.b)];
    const double len = std::hypot(ra[0] - rb[0], ra[1] - rb[1]);
    CHECK(len == Catch::Approx(b.type == "CC" ? 1.39 : 1.09).epsilon(1e-12));
  }
}

TEST_CASE("probe-molecule energy sums all bonds and decays") {
  const auto mol = benzene_geometry();
  const auto params = benzene_argon_ilj_params();
  double sum = 0.0;
  for (const auto& b : mol.bonds) sum += ilj_atom_bond({0.4, 0.2, 3.6}, mol, b, params);
  CHECK(ilj_interaction_energy({0.4, 0.2, 3.6}, mol, params) == Catch::Approx(sum).epsilon(1e-14));
  CHECK(std::abs(ilj_interaction_energy({0.0, 0.0, 1e4}, mol, params)) < 1e-10);
}

TEST_CASE("probe energy is symmetric under the x mirror") {
  const auto mol = benzene_geometry();
  const auto params = benzene_argon_ilj_params();
  for (double x : {0.3, 1.1, 2.7})
    for (double z : {3.3, 4.0, 5.5}) {
      const double a = ilj_interaction_energy({x, 0.0, z}, mol, params);
      const double b = ilj_interaction_energy({-x, 0.0, z}, mol, params);
      CHECK(a == Catch::Approx(b).epsilon(1e-12));
    }
}

TEST_CASE("coarse surface scan brackets the axial minimum") {
  const auto mol = benzene_geometry();
  const auto params = benzene_argon_ilj_params();
  const auto min = scan_xz_minimum(mol, params, -3.0, 3.0, 3.0, 6.0, 0.05);
  CHECK(std::abs(min.x) < 0.051);
  CHECK(min.z == Catch::Approx(3.565).margin(0.05));
  CHECK(min.energy < -40.0);
}
