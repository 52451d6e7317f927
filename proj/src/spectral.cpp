#include "rabi/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rabi/errors.hpp"

namespace rabi {

namespace {

constexpr double kSymmetryTol = 1e-12;

void check_symmetric(const OperatorMatrix& h) {
  if (h.entries.rows() != h.entries.cols() || h.entries.rows() == 0)
    throw std::invalid_argument("diagonalize: matrix must be square and nonempty");
  const double asym = asymmetry(h.entries);
  if (asym > kSymmetryTol)
    throw std::invalid_argument("diagonalize: matrix is not symmetric (max asymmetry " +
                                std::to_string(asym) + ")");
}

void check_temperature(double t) {
  if (!(t >= 0.0) || !std::isfinite(t))
    throw std::invalid_argument("temperature must be finite and >= 0");
}

}  // namespace

Eigensystem diagonalize(const OperatorMatrix& h) {
  check_symmetric(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.entries, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw EigensolverError("symmetric eigensolver did not converge");
  // Eigen returns eigenvalues in increasing order.
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Eigen::VectorXd eigenvalues(const OperatorMatrix& h) {
  check_symmetric(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.entries, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw EigensolverError("symmetric eigensolver did not converge");
  return solver.eigenvalues();
}

SpectralDecomposition diagonalize(const HamiltonianParams& p, const BasisSpec& basis) {
  Eigensystem es = diagonalize(build_hamiltonian(p, basis));
  return {std::move(es.energies), std::move(es.vectors), p, basis};
}

Eigen::VectorXd boltzmann_populations(const Eigen::VectorXd& energies, double temperature) {
  check_temperature(temperature);
  const Eigen::Index n = energies.size();
  Eigen::VectorXd p = Eigen::VectorXd::Zero(n);
  if (n == 0) return p;
  if (temperature == 0.0) {
    p(0) = 1.0;
    return p;
  }
  const double e0 = energies(0);
  for (Eigen::Index i = 0; i < n; ++i) p(i) = std::exp(-(energies(i) - e0) / temperature);
  p /= p.sum();
  return p;
}

double log_partition_function(const Eigen::VectorXd& energies, double temperature) {
  if (!(temperature > 0.0)) throw std::invalid_argument("log_partition_function needs T > 0");
  const double e0 = energies(0);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < energies.size(); ++i) sum += std::exp(-(energies(i) - e0) / temperature);
  return -e0 / temperature + std::log(sum);
}

ThermalState gibbs_state(const SpectralDecomposition& spec, double temperature) {
  check_temperature(temperature);
  ThermalState state;
  state.temperature = temperature;
  state.populations = boltzmann_populations(spec.energies, temperature);
  state.log_partition = temperature > 0.0 ? log_partition_function(spec.energies, temperature) : 0.0;
  if (temperature == 0.0) {
    const Eigen::VectorXd v0 = spec.vectors.col(0);
    state.rho = v0 * v0.transpose();
  } else {
    state.rho = spec.vectors * state.populations.asDiagonal() * spec.vectors.transpose();
  }
  // symmetrize away rounding from the triple product
  state.rho = (0.5 * (state.rho + state.rho.transpose())).eval();
  return state;
}

double shannon_entropy(const Eigen::VectorXd& populations) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < populations.size(); ++i) {
    const double p = populations(i);
    if (p > 0.0) s -= p * std::log(p);
  }
  return s;
}

BasisSpec converge_cutoff(const HamiltonianParams& p, double temperature, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("converge_cutoff: tol must be > 0");
  check_temperature(temperature);
  p.validate();

  constexpr int kStart = 20;
  constexpr int kLimit = 320;
  constexpr int kCompared = 10;

  Eigen::VectorXd current = eigenvalues(build_hamiltonian(p, BasisSpec(kStart)));
  for (int n = kStart; n <= kLimit; n *= 2) {
    const Eigen::VectorXd doubled = eigenvalues(build_hamiltonian(p, BasisSpec(2 * n)));
    const Eigen::Index k = std::min<Eigen::Index>(kCompared, current.size());
    const double shift = (current.head(k) - doubled.head(k)).cwiseAbs().maxCoeff();

    const Eigen::VectorXd pops = boltzmann_populations(current, temperature);
    const Eigen::Index top = std::max<Eigen::Index>(1, current.size() / 10);
    const double tail = pops.tail(top).sum();

    if (shift < tol && tail < tol) return BasisSpec(n);
    current = doubled;
  }
  throw ConvergenceError("Fock cutoff not converged by n_max = " + std::to_string(kLimit) +
                         " (omega=" + std::to_string(p.omega) + ", g=" + std::to_string(p.g) + ")");
}

}  // namespace rabi
