#include "qgopt/hamiltonian.hpp"
#include "qgopt/spectral.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace qgopt;

namespace {

GeometryGrid lih_grid() {
  GeometryGrid grid;
  grid.spatial_dim = 1;
  grid.base_positions = {{5.5, 0.0, 0.0}, {6.05, 0.0, 0.0}};
  grid.charges = {1.0, 1.0};
  grid.search = {SearchCoordinate{1, 0, 3, 6.05, 4.0}};
  return grid;
}

PotentialTerms lih_terms() {
  PotentialTerms t;
  t.ee = PairPotential::soft(0.6);
  t.en = {PairPotential::soft(0.7), PairPotential::soft(2.25)};
  t.nn = {PairPotential::soft(2.35)};
  return t;
}

GeometryGrid single_nucleus_grid(double x, double charge = 1.0) {
  GeometryGrid grid;
  grid.spatial_dim = 1;
  grid.base_positions = {{x, 0.0, 0.0}};
  grid.charges = {charge};
  return grid;
}

PotentialTerms single_soft_terms(double lambda_sq) {
  PotentialTerms t;
  t.en = {PairPotential::soft(lambda_sq)};
  return t;
}

Eigen::VectorXcd random_state(std::uint64_t dim, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = complexd(g(rng), g(rng));
  v /= v.norm();
  return v;
}

} // namespace

TEST_CASE("potential diagonal for one electron and one on-grid nucleus") {
  const auto layout = build_layout(1, 1, 2, 4.0); // grid points 0,1,2,3
  const auto grid = single_nucleus_grid(1.0);
  const auto pot = build_potential_diagonal(layout, grid, single_soft_terms(0.7));
  CHECK(pot.total[1] == Catch::Approx(-1.0 / std::sqrt(0.7)).epsilon(1e-15));
  CHECK(pot.total[3] == Catch::Approx(-soft_coulomb(2.0, 0.7)).epsilon(1e-15));
  CHECK(pot.nn_per_geometry[0] == 0.0);
}

TEST_CASE("composite potential matches an independent brute-force evaluation") {
  const auto layout = build_layout(2, 1, 6, 15.0);
  const auto grid = lih_grid();
  const auto pot = build_potential_diagonal(layout, grid, lih_terms());
  REQUIRE(pot.geometry_dim == 8);
  REQUIRE(pot.electronic_dim == 4096);

  const int n = layout.points_per_axis();
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint64_t j = rng() % 8;
    const int k0 = static_cast<int>(rng() % n), k1 = static_cast<int>(rng() % n);
    const double x0 = layout.coordinate(k0), x1 = layout.coordinate(k1);
    const double d = 0.55 + 0.5 * static_cast<double>(j);
    const double x_h = 5.5, x_li = 5.5 + d;
    const double expected = soft_coulomb(std::abs(x0 - x1), 0.6) +
                            lih_electron_nucleus_potential(x0, x_h, x_li) +
                            lih_electron_nucleus_potential(x1, x_h, x_li) +
                            soft_coulomb(d, 2.35);
    const auto flat = static_cast<std::uint64_t>(k0) + static_cast<std::uint64_t>(k1) * n;
    CHECK(pot.column(j)[flat] == Catch::Approx(expected).epsilon(1e-13));
  }

  SECTION("nuclear term is constant across the electronic block") {
    for (std::uint64_t j = 0; j < 8; ++j) {
      const double nn = pot.nn_per_geometry[j];
      CHECK(nn == Catch::Approx(soft_coulomb(0.55 + 0.5 * static_cast<double>(j), 2.35)));
      for (std::uint64_t k = 0; k < pot.electronic_dim; k += 97) {
        const double rebuilt = pot.ee[k] + pot.ext[k] + pot.en[j * pot.electronic_dim + k] + nn;
        CHECK(pot.column(j)[k] == Catch::Approx(rebuilt).epsilon(1e-15));
      }
    }
  }

  SECTION("well floor at the two ions matches direct evaluation") {
    const std::uint64_t j = 2;
    double min_val = 1e300;
    std::uint64_t min_k = 0;
    for (std::uint64_t k = 0; k < pot.electronic_dim; ++k) {
      const double v = pot.column(j)[k] - pot.nn_per_geometry[j];
      if (v < min_val) {
        min_val = v;
        min_k = k;
      }
    }
    const int k0 = static_cast<int>(min_k % n), k1 = static_cast<int>(min_k / n);
    const double x0 = layout.coordinate(k0), x1 = layout.coordinate(k1);
    const double direct = soft_coulomb(std::abs(x0 - x1), 0.6) +
                          lih_electron_nucleus_potential(x0, 5.5, 7.05) +
                          lih_electron_nucleus_potential(x1, 5.5, 7.05);
    CHECK(min_val == Catch::Approx(direct).epsilon(1e-13));
    // electrons sit near the two distinct ions in the minimum
    CHECK(std::abs(x0 - x1) > 0.5);
  }
}

TEST_CASE("zero charges leave only the external field") {
  const auto layout = build_layout(1, 1, 3, 8.0);
  auto grid = single_nucleus_grid(4.0, 0.0);
  PotentialTerms terms = single_soft_terms(1.0);
  terms.ext.field = [](const double* p, int) { return 0.25 * p[0]; };
  const auto pot = build_potential_diagonal(layout, grid, terms);
  for (int k = 0; k < layout.points_per_axis(); ++k)
    CHECK(pot.total[static_cast<std::size_t>(k)] ==
          Catch::Approx(0.25 * layout.coordinate(k)).margin(1e-15));
}

TEST_CASE("bare-Coulomb nucleus on a grid point is rejected with guidance") {
  const auto layout = build_layout(1, 1, 2, 4.0);
  const auto grid = single_nucleus_grid(1.0);
  PotentialTerms terms;
  terms.en = {PairPotential::bare()};
  CHECK_THROWS_AS(build_potential_diagonal(layout, grid, terms), numerical_error);
}

TEST_CASE("kinetic spectrum uses centered frequencies") {
  SECTION("single qubit, L = 2 pi") {
    const auto layout = build_layout(1, 1, 1, 2.0 * M_PI);
    const auto kin = build_kinetic_spectrum(layout);
    REQUIRE(kin.values.size() == 2);
    CHECK(kin.values[0] == 0.0);
    CHECK(kin.values[1] == Catch::Approx(0.5).epsilon(1e-15)); // frequency -1
  }
  SECTION("zero momentum entry vanishes and the rest are positive") {
    const auto layout = build_layout(2, 1, 4, 10.0);
    const auto kin = build_kinetic_spectrum(layout);
    CHECK(kin.values[0] == 0.0);
    for (double v : kin.values) CHECK(v >= 0.0);
  }
  SECTION("two electrons give the outer sum of one-electron spectra") {
    const auto one = build_kinetic_spectrum(build_layout(1, 1, 3, 7.0));
    const auto two = build_kinetic_spectrum(build_layout(2, 1, 3, 7.0));
    const int n = 8;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        CHECK(two.values[static_cast<std::size_t>(a + n * b)] ==
              Catch::Approx(one.values[static_cast<std::size_t>(a)] +
                            one.values[static_cast<std::size_t>(b)])
                  .margin(1e-15));
  }
}

TEST_CASE("dense Hamiltonian is symmetric and reduces to the free particle") {
  const auto layout = build_layout(1, 1, 4, 6.0);
  std::vector<double> zero(16, 0.0);
  const auto h = dense_hamiltonian(layout, zero.data());
  CHECK((h - h.transpose()).cwiseAbs().maxCoeff() < 1e-12);

  const auto dec = diagonalize(h);
  auto kin = build_kinetic_spectrum(layout).values;
  std::sort(kin.begin(), kin.end());
  for (int i = 0; i < 16; ++i)
    CHECK(dec.eigenvalues(i) == Catch::Approx(kin[static_cast<std::size_t>(i)]).margin(1e-10));
}

TEST_CASE("dense cap raises a capacity error") {
  const auto layout = build_layout(2, 1, 6, 15.0);
  std::vector<double> zero(4096, 0.0);
  CHECK_THROWS_AS(dense_hamiltonian(layout, zero.data(), 1024), capacity_error);
}

TEST_CASE("split application agrees with the dense matrix") {
  const auto layout = build_layout(2, 1, 3, 9.0);
  GeometryGrid grid;
  grid.spatial_dim = 1;
  grid.base_positions = {{3.0, 0.0, 0.0}, {5.0, 0.0, 0.0}};
  grid.charges = {1.0, 1.0};
  grid.search = {SearchCoordinate{1, 0, 1, 5.0, 2.0}};
  const auto pot = build_potential_diagonal(layout, grid, lih_terms());
  const auto kin = build_kinetic_spectrum(layout);

  for (std::uint64_t j = 0; j < pot.geometry_dim; ++j) {
    const auto h = dense_hamiltonian(layout, pot.column(j));
    for (unsigned seed = 0; seed < 5; ++seed) {
      const auto psi = random_state(pot.electronic_dim, 100 * seed + static_cast<unsigned>(j));
      Eigen::VectorXcd h_psi(psi.size());
      apply_hamiltonian(layout, pot.column(j), kin, psi.data(), h_psi.data());
      const Eigen::VectorXcd dense = h * psi;
      CHECK((h_psi - dense).norm() < 1e-10);
      // split-representation energy equals the dense quadratic form
      PotentialDiagonal single;
      single.electronic_dim = pot.electronic_dim;
      single.geometry_dim = 1;
      single.total.assign(pot.column(j), pot.column(j) + pot.electronic_dim);
      const double split_e = energy_expectation(layout, single, kin, psi.data());
      CHECK(split_e == Catch::Approx(psi.dot(dense).real()).margin(1e-10));
    }
  }
}

TEST_CASE("dense Hamiltonian commutes with electron exchange") {
  const auto layout = build_layout(2, 1, 3, 9.0);
  GeometryGrid grid;
  grid.spatial_dim = 1;
  grid.base_positions = {{3.0, 0.0, 0.0}, {4.3, 0.0, 0.0}};
  grid.charges = {1.0, 1.0};
  const auto pot = build_potential_diagonal(layout, grid, lih_terms());
  const auto h = dense_hamiltonian(layout, pot.column(0));
  const int n = layout.points_per_axis();
  const auto dim = static_cast<Eigen::Index>(pot.electronic_dim);
  Eigen::MatrixXd swap = Eigen::MatrixXd::Zero(dim, dim);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) swap(a + n * b, b + n * a) = 1.0;
  CHECK((h * swap - swap * h).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("diagonalize returns ascending pairs with tight residuals") {
  SECTION("two-level sanity") {
    Eigen::MatrixXd h(2, 2);
    h << 3.0, 0.0, 0.0, 1.0;
    const auto dec = diagonalize(h);
    CHECK(dec.eigenvalues(0) == Catch::Approx(1.0));
    CHECK(dec.eigenvalues(1) == Catch::Approx(3.0));
  }
  SECTION("non-symmetric input is rejected") {
    Eigen::MatrixXd h(2, 2);
    h << 0.0, 1.0, 0.0, 0.0;
    CHECK_THROWS_AS(diagonalize(h), validation_error);
  }
  SECTION("residuals and orthonormality on a real system") {
    const auto layout = build_layout(2, 1, 3, 9.0);
    const auto grid = lih_grid();
    const auto pot = build_potential_diagonal(layout, grid, lih_terms());
    const auto h = dense_hamiltonian(layout, pot.column(2));
    const auto dec = diagonalize(h, layout);
    const double h_norm = h.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < dec.eigenvalues.size(); ++i) {
      const Eigen::VectorXd r = h * dec.eigenvectors.col(i) -
                                dec.eigenvalues(i) * dec.eigenvectors.col(i);
      CHECK(r.norm() <= 1e-9 * h_norm);
    }
    const Eigen::MatrixXd gram = dec.eigenvectors.transpose() * dec.eigenvectors;
    CHECK((gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() <
          1e-10);
    // ground state is exchange symmetric
    CHECK(dec.exchange_parity[0] == 1);
  }
}

TEST_CASE("sector-split spectra match the dense decomposition") {
  const auto layout = build_layout(2, 1, 3, 9.0);
  const auto grid = lih_grid();
  const auto pot = build_potential_diagonal(layout, grid, lih_terms());
  const auto h = dense_hamiltonian(layout, pot.column(3));
  const auto dense = diagonalize(h, layout);
  const auto two = diagonalize_two_electron_1d(layout, pot.column(3));

  Eigen::VectorXd merged;
  std::vector<int> parity;
  two.merged_levels(merged, parity);
  REQUIRE(merged.size() == dense.eigenvalues.size());
  for (Eigen::Index i = 0; i < merged.size(); ++i)
    CHECK(merged(i) == Catch::Approx(dense.eigenvalues(i)).margin(1e-9));

  SECTION("expanded sector eigenvectors satisfy the eigenproblem") {
    for (Eigen::Index c = 0; c < 4; ++c) {
      const Eigen::VectorXd phi = two.expand(two.evecs_sym, c, true);
      CHECK((h * phi - two.evals_sym(c) * phi).norm() < 1e-9 * h.cwiseAbs().maxCoeff());
      CHECK(phi.norm() == Catch::Approx(1.0).epsilon(1e-12));
      const Eigen::VectorXd psi = two.expand(two.evecs_anti, c, false);
      CHECK((h * psi - two.evals_anti(c) * psi).norm() < 1e-9 * h.cwiseAbs().maxCoeff());
    }
  }
  SECTION("partial solves agree with the full ones") {
    const auto lowest = diagonalize_two_electron_1d(layout, pot.column(3), 2);
    CHECK(lowest.evals_sym(0) == Catch::Approx(two.evals_sym(0)).margin(1e-11));
    CHECK(lowest.evals_anti(1) == Catch::Approx(two.evals_anti(1)).margin(1e-11));
  }
}

TEST_CASE("electron density normalizes and factorizes for product states") {
  const auto layout = build_layout(2, 1, 4, 8.0);
  const int n = layout.points_per_axis();
  Eigen::VectorXd u(n);
  for (int k = 0; k < n; ++k) u(k) = std::exp(-0.4 * std::pow(layout.coordinate(k) - 4.0, 2));
  u /= u.norm();
  Eigen::VectorXcd psi(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) psi(a + n * b) = u(a) * u(b);
  const auto density = electron_density(psi.data(), layout);
  for (int k = 0; k < n; ++k)
    CHECK(density(k) == Catch::Approx(2.0 * u(k) * u(k) / layout.dx()).epsilon(1e-12));
  CHECK(density.sum() * layout.dx() == Catch::Approx(2.0).epsilon(1e-10));
}
