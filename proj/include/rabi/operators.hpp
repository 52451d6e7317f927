#pragma once

#include <Eigen/Dense>

namespace rabi {

/// Truncated qubit (x) Fock product basis in qubit-major order:
/// composite index k = s * (n_max + 1) + n, with s = 0 the lower bare qubit level.
struct BasisSpec {
  int n_max = 40;

  BasisSpec() = default;
  explicit BasisSpec(int n_max);

  int fock_dim() const { return n_max + 1; }
  int dim() const { return 2 * (n_max + 1); }
  int index(int s, int n) const { return s * (n_max + 1) + n; }
  int qubit_of(int k) const { return k / (n_max + 1); }
  int fock_of(int k) const { return k % (n_max + 1); }

  friend bool operator==(const BasisSpec&, const BasisSpec&) = default;
};

/// Model energies in units of the base frequency (hbar = k_B = 1).
struct HamiltonianParams {
  double omega = 1.0;
  double delta = 0.5;
  double epsilon = 0.005;
  double g = 0.0;

  /// Delta = omega/2 and epsilon = 0.005 omega.
  static HamiltonianParams from_omega(double omega, double g);

  /// Throws std::invalid_argument on omega <= 0 or any negative energy.
  void validate() const;
};

struct OperatorMatrix {
  Eigen::MatrixXd entries;
  bool hermitian = false;

  int dim() const { return static_cast<int>(entries.rows()); }
};

enum class Pauli { X, Z };

OperatorMatrix annihilation(const BasisSpec& basis);
OperatorMatrix creation(const BasisSpec& basis);
OperatorMatrix number(const BasisSpec& basis);
OperatorMatrix pauli(Pauli which, const BasisSpec& basis);

/// Field quadrature a + a^dagger.
OperatorMatrix quadrature(const BasisSpec& basis);

/// H = delta sz + epsilon sx + omega a^dag a + g sx (a + a^dag).
OperatorMatrix build_hamiltonian(const HamiltonianParams& p, const BasisSpec& basis);

/// Largest |A - A^T| entry.
double asymmetry(const Eigen::MatrixXd& m);

}  // namespace rabi
