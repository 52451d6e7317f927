#include <doctest.h>

#include <cmath>
#include <random>

#include "rabi/errors.hpp"
#include "rabi/thermalization.hpp"

using namespace rabi;

namespace {

SpectralDecomposition two_level_toy(double gap) {
  // Bare n_max = 1 basis with identity eigenvectors; the upper pair sits far away.
  SpectralDecomposition s;
  s.basis = BasisSpec(1);
  s.energies = Eigen::Vector4d(0.0, gap, 50.0, 50.0 + gap);
  s.vectors = Eigen::Matrix4d::Identity();
  return s;
}

}  // namespace

TEST_CASE("two-level detailed balance") {
  const double gap = 0.7, t = 0.35;
  // identity eigenvectors: sigma_x couples (0,n) <-> (1,n), i.e. index 0 <-> 2 and 1 <-> 3;
  // the quadrature couples index 0 <-> 1 and 2 <-> 3.
  const RateMatrix r = build_rate_matrix(two_level_toy(gap), t, BathCoupling::FieldQuadrature, 1.0);
  CHECK(r.generator(1, 0) / r.generator(0, 1) == doctest::Approx(std::exp(-gap / t)).epsilon(1e-12));
  CHECK(r.generator(2, 0) == 0.0);

  SUBCASE("the kernel of a disconnected toy is flagged") {
    CHECK_THROWS_AS(steady_populations(r), ReducibleGeneratorError);
  }
  SUBCASE("connected toy relaxes to Boltzmann") {
    const RateMatrix both = build_rate_matrix(two_level_toy(gap), t, BathCoupling::Both, 1.0);
    const Eigen::VectorXd p = steady_populations(both);
    CHECK(p(1) / p(0) == doctest::Approx(std::exp(-gap / t)).epsilon(1e-10));
  }
}

TEST_CASE("ladder selection rule at g = 0") {
  const BasisSpec b(8);
  const SpectralDecomposition s = diagonalize(HamiltonianParams::from_omega(1.0, 0.0), b);
  const RateMatrix r = build_rate_matrix(s, 0.35, BathCoupling::FieldQuadrature, 1.0);
  // with epsilon > 0 the qubit eigenbasis is rotated but Fock numbers are preserved
  const Eigen::MatrixXd qubit = s.vectors.transpose() * pauli(Pauli::Z, b).entries * s.vectors;
  const Eigen::MatrixXd photons = s.vectors.transpose() * number(b).entries * s.vectors;
  for (int i = 0; i < s.dim(); ++i)
    for (int j = 0; j < s.dim(); ++j) {
      if (i == j || r.generator(i, j) == 0.0) continue;
      CHECK(std::abs(std::abs(photons(i, i) - photons(j, j)) - 1.0) < 1e-9);
      // same qubit sector: sigma_z expectation is unchanged
      CHECK(std::abs(qubit(i, i) - qubit(j, j)) < 1e-6);
    }
  CHECK_FALSE(is_connected(r));
  CHECK(is_connected(build_rate_matrix(s, 0.35, BathCoupling::Both, 1.0)));
}

TEST_CASE("generator structure at g = 0.9") {
  const SpectralDecomposition s = diagonalize(HamiltonianParams::from_omega(1.0, 0.9), BasisSpec(40));
  const RateMatrix r = build_rate_matrix(s, 0.35, BathCoupling::Both, 1.0);
  CHECK(r.generator.colwise().sum().cwiseAbs().maxCoeff() < 1e-12);
  for (int i = 0; i < r.dim(); ++i)
    for (int j = 0; j < r.dim(); ++j)
      if (i != j) CHECK(r.generator(i, j) >= 0.0);
  CHECK(detailed_balance_violation(r, s.energies) < 1e-10);
}

TEST_CASE("steady state is Boltzmann for any rate choice") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> scale(0.1, 10.0);
  const SpectralDecomposition s = diagonalize(HamiltonianParams::from_omega(1.0, 0.8), BasisSpec(40));
  const Eigen::VectorXd gibbs = boltzmann_populations(s.energies, 0.35);
  for (BathCoupling c : {BathCoupling::FieldQuadrature, BathCoupling::QubitX, BathCoupling::Both})
    for (int k = 0; k < 3; ++k) {
      const RateMatrix r = build_rate_matrix(s, 0.35, c, scale(rng));
      CHECK((steady_populations(r) - gibbs).cwiseAbs().maxCoeff() < 1e-8);
    }

  SUBCASE("kernel is invariant under rate rescaling") {
    const Eigen::VectorXd a = steady_populations(build_rate_matrix(s, 0.35, BathCoupling::Both, 1.0));
    const Eigen::VectorXd b = steady_populations(build_rate_matrix(s, 0.35, BathCoupling::Both, 7.3));
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("relaxation stays nonnegative and approaches the kernel") {
  const SpectralDecomposition s = diagonalize(HamiltonianParams::from_omega(1.0, 0.8), BasisSpec(3));
  const RateMatrix r = build_rate_matrix(s, 0.5, BathCoupling::Both, 1.0);
  // slowest mode decays at ~0.74 here, so t ~ 25 leaves ~1e-8
  const double norm = r.generator.cwiseAbs().colwise().sum().maxCoeff();
  const double dt = 1e-3 / norm;
  Eigen::VectorXd p = Eigen::VectorXd::Zero(r.dim());
  p(r.dim() - 1) = 1.0;
  const Eigen::VectorXd target = steady_populations(r);
  double last_distance = (p - target).lpNorm<1>();
  for (int chunk = 0; chunk < 1200; ++chunk) {
    p = relax(r, p, dt, 1000);
    CHECK(p.minCoeff() >= 0.0);
    const double d = (p - target).lpNorm<1>();
    CHECK(d <= last_distance + 1e-12);
    last_distance = d;
  }
  CHECK(last_distance < 1e-6);
}

TEST_CASE("input validation") {
  const SpectralDecomposition s = diagonalize(HamiltonianParams::from_omega(1.0, 0.8), BasisSpec(5));
  CHECK_THROWS_AS(build_rate_matrix(s, 0.0, BathCoupling::Both, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(build_rate_matrix(s, -1.0, BathCoupling::Both, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(build_rate_matrix(s, 0.3, BathCoupling::Both, 0.0), std::invalid_argument);
}
