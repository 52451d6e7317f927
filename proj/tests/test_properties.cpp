#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rabi/cycle.hpp"
#include "rabi/measures.hpp"
#include "rabi/spectral.hpp"
#include "rabi/thermalization.hpp"

using namespace rabi;

namespace {

constexpr int kDraws = 200;

struct Draw {
  CycleSpec spec;
  HamiltonianParams params;
  double T = 0.0;
};

Draw draw(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Draw d;
  const double T_h = 0.02 + 0.6 * u(rng);
  const double T_l = T_h * (0.05 + 0.9 * u(rng));
  if (u(rng) < 0.5) {
    d.spec.protocol = ChangeFrequency{1.1 + 2.0 * u(rng), 1.0, 2.5 * u(rng)};
  } else {
    d.spec.protocol = ChangeCoupling{1.0, 1.5 * u(rng), 2.5 * u(rng)};
  }
  d.spec.T_h = T_h;
  d.spec.T_l = T_l;
  d.spec.epsilon_coeff = 0.02 * u(rng);
  d.spec.delta_mode = u(rng) < 0.7 ? DeltaMode::Scaled : DeltaMode::Fixed;
  d.spec.basis.n_max = 24;
  d.params = u(rng) < 0.5 ? d.spec.hot_params() : d.spec.cold_params();
  d.T = u(rng) < 0.5 ? T_h : T_l;
  return d;
}

bool is_density_matrix(const Eigen::MatrixXd& rho, double tol) {
  if (asymmetry(rho) > tol || std::abs(rho.trace() - 1.0) > tol) return false;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rho, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -1e-10 && es.eigenvalues().maxCoeff() <= 1.0 + 1e-10;
}

}  // namespace

TEST_CASE("cycle invariants over random parameters") {
  std::mt19937_64 rng(20240611);
  int engines = 0;
  for (int i = 0; i < kDraws; ++i) {
    const Draw d = draw(rng);
    const CycleResult r = run_cycle(d.spec);
    CAPTURE(i);
    CHECK(r.W == doctest::Approx(r.Q1 + r.Q2).epsilon(1e-12).scale(1.0));
    CHECK(r.carnot == doctest::Approx(1.0 - d.spec.T_l / d.spec.T_h));
    CHECK(r.regime == classify_regime(r.W));
    if (r.W > kWorkTolerance) {
      ++engines;
      CHECK(r.Q1 > 0.0);
      CHECK(r.Q2 < 0.0);
      REQUIRE(r.eta.has_value());
      CHECK(*r.eta <= r.carnot + 1e-9);
    } else {
      CHECK_FALSE(r.eta.has_value());
    }
  }
  CHECK(engines > 20);
}

TEST_CASE("thermal states are valid density matrices with consistent entropy") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < kDraws; ++i) {
    const Draw d = draw(rng);
    const BasisSpec basis(16);
    const SpectralDecomposition sd = diagonalize(d.params, basis);
    const ThermalState th = gibbs_state(sd, d.T);
    CAPTURE(i);
    REQUIRE(is_density_matrix(th.rho, 1e-12));
    const DensityMatrix rho = DensityMatrix::from_thermal(th, basis);
    CHECK(von_neumann_entropy(rho.entries) == doctest::Approx(shannon_entropy(th.populations)).epsilon(1e-9).scale(1.0));
    for (Subsystem keep : {Subsystem::Atom, Subsystem::Field}) {
      CHECK(is_density_matrix(partial_trace(rho, keep), 1e-12));
    }
    CHECK(mutual_information(rho) >= 0.0);
    CHECK(log_negativity(rho) >= 0.0);
    CHECK(log_negativity(rho, Subsystem::Field) == doctest::Approx(log_negativity(rho)).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("mean energy is minus the beta derivative of ln Z") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < kDraws; ++i) {
    const Draw d = draw(rng);
    const Eigen::VectorXd e = eigenvalues(build_hamiltonian(d.params, BasisSpec(16)));
    const double beta = 1.0 / d.T;
    const double db = 1e-5;
    const double derivative =
        -(log_partition_function(e, 1.0 / (beta + db)) - log_partition_function(e, 1.0 / (beta - db))) / (2.0 * db);
    const double mean = boltzmann_populations(e, d.T).dot(e);
    CAPTURE(i);
    CHECK(std::abs(derivative - mean) <= 1e-5 * std::max(1.0, std::abs(mean)));
  }
}

TEST_CASE("partial transpose is an involution on random states") {
  std::mt19937_64 rng(13);
  const BasisSpec basis(5);
  for (int i = 0; i < kDraws; ++i) {
    const Eigen::MatrixXd rho = oracle::random_density(basis.dim(), rng, 1 + i % basis.dim());
    for (Subsystem which : {Subsystem::Atom, Subsystem::Field}) {
      const Eigen::MatrixXd pt = partial_transpose(rho, basis, which);
      CHECK(pt.trace() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK((partial_transpose(pt, basis, which) - rho).cwiseAbs().maxCoeff() == 0.0);
    }
    const DensityMatrix dm(rho, basis);
    CHECK(log_negativity(dm, Subsystem::Field) == doctest::Approx(log_negativity(dm)).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("pure states satisfy the Schmidt entropy identities") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> normal;
  const BasisSpec basis(6);
  for (int i = 0; i < kDraws; ++i) {
    Eigen::VectorXd psi(basis.dim());
    for (int k = 0; k < psi.size(); ++k) psi(k) = normal(rng);
    psi.normalize();
    const DensityMatrix rho = DensityMatrix::pure(psi, basis);
    const double s_atom = von_neumann_entropy(partial_trace(rho, Subsystem::Atom));
    const double s_field = von_neumann_entropy(partial_trace(rho, Subsystem::Field));
    CAPTURE(i);
    CHECK(std::abs(s_atom - s_field) < 1e-9);
    CHECK(mutual_information(rho) == doctest::Approx(2.0 * s_atom).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("secular steady state is Boltzmann for random draws") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> scale(0.01, 100.0);
  const BathCoupling couplings[] = {BathCoupling::FieldQuadrature, BathCoupling::QubitX, BathCoupling::Both};
  for (int i = 0; i < kDraws / 4; ++i) {
    Draw d = draw(rng);
    d.params.epsilon = std::max(d.params.epsilon, 1e-3);
    const SpectralDecomposition sd = diagonalize(d.params, BasisSpec(12));
    const BathCoupling c = couplings[i % 3];
    const RateMatrix rates = build_rate_matrix(sd, d.T, c, scale(rng));
    if (!is_connected(rates)) continue;
    const Eigen::VectorXd p = steady_populations(rates);
    CAPTURE(i);
    CHECK((p - boltzmann_populations(sd.energies, d.T)).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("thermal field amplitude follows the atom coherence") {
  // <[H, a]> = 0 in any stationary state gives omega <a> = -g <sigma_x>.
  std::mt19937_64 rng(23);
  for (int i = 0; i < kDraws; ++i) {
    const Draw d = draw(rng);
    const BasisSpec basis(40);
    const DensityMatrix rho = DensityMatrix::from_thermal(gibbs_state(diagonalize(d.params, basis), d.T), basis);
    CAPTURE(i);
    const double rho12 = partial_trace(rho, Subsystem::Atom)(0, 1);
    CHECK(field_amplitude(rho).value == doctest::Approx(-2.0 * d.params.g * rho12 / d.params.omega).epsilon(1e-9).scale(1.0));
    CHECK(atom_coherence(rho) == std::abs(rho12));
  }
}
