#pragma once

#include <Eigen/Dense>

#include "rabi/operators.hpp"

namespace rabi {

/// Ascending eigenvalues with aligned orthonormal eigencolumns.
struct Eigensystem {
  Eigen::VectorXd energies;
  Eigen::MatrixXd vectors;
};

struct SpectralDecomposition {
  Eigen::VectorXd energies;
  Eigen::MatrixXd vectors;
  HamiltonianParams params;
  BasisSpec basis;

  int dim() const { return static_cast<int>(energies.size()); }
};

/// Thermal (Gibbs) state of a spectrum. Populations are aligned with the energies.
struct ThermalState {
  Eigen::MatrixXd rho;
  Eigen::VectorXd populations;
  double temperature = 0.0;
  /// ln Z = -E0/T + ln(sum_n exp(-(E_n - E0)/T)); left at 0 for T = 0.
  double log_partition = 0.0;
};

/// Diagonalizes a symmetric matrix. Rejects asymmetric input with
/// std::invalid_argument and reports solver failure as EigensolverError.
Eigensystem diagonalize(const OperatorMatrix& h);

/// Eigenvalues only, ascending.
Eigen::VectorXd eigenvalues(const OperatorMatrix& h);

/// Builds and diagonalizes the Hamiltonian for the given parameters.
SpectralDecomposition diagonalize(const HamiltonianParams& p, const BasisSpec& basis);

/// Ground-shifted Boltzmann populations; T = 0 puts all weight on level 0.
Eigen::VectorXd boltzmann_populations(const Eigen::VectorXd& energies, double temperature);

/// ln Z for a spectrum at temperature T > 0.
double log_partition_function(const Eigen::VectorXd& energies, double temperature);

ThermalState gibbs_state(const SpectralDecomposition& spec, double temperature);

/// Shannon entropy of a distribution in nats; zero entries contribute nothing.
double shannon_entropy(const Eigen::VectorXd& populations);

/// Smallest cutoff in {20, 40, 80, 160, 320} whose lowest ten energies agree with
/// the doubled cutoff to within tol and whose top tenth of levels holds less
/// than tol of the thermal population at T. Throws ConvergenceError otherwise.
BasisSpec converge_cutoff(const HamiltonianParams& p, double temperature, double tol);

}  // namespace rabi
