#pragma once

#include <optional>

#include <Eigen/Dense>

#include "rabi/operators.hpp"
#include "rabi/spectral.hpp"

namespace rabi {

/// Real symmetric density matrix on the qubit-major qubit (x) Fock basis.
struct DensityMatrix {
  Eigen::MatrixXd entries;
  BasisSpec basis;

  DensityMatrix() = default;
  /// Checks dimension, symmetry (1e-12), unit trace (1e-12) and eigenvalues >= -1e-10.
  DensityMatrix(Eigen::MatrixXd rho, const BasisSpec& basis);

  static DensityMatrix from_thermal(const ThermalState& state, const BasisSpec& basis);
  /// Projector onto a normalized state vector.
  static DensityMatrix pure(const Eigen::VectorXd& psi, const BasisSpec& basis);

  int dim() const { return static_cast<int>(entries.rows()); }
};

enum class Subsystem { Atom, Field };

/// Reduced state of the kept subsystem: 2x2 for Atom, (n_max+1)^2 for Field.
Eigen::MatrixXd partial_trace(const DensityMatrix& rho, Subsystem keep);

/// Transpose on one subsystem. In qubit-major layout the atom transpose swaps
/// the off-diagonal Fock blocks and the field transpose transposes each block.
Eigen::MatrixXd partial_transpose(const Eigen::MatrixXd& rho, const BasisSpec& basis, Subsystem which);

double atom_coherence(const DensityMatrix& rho);

struct FieldAmplitude {
  double value = 0.0;
  double magnitude = 0.0;
};

/// Tr(rho a).
FieldAmplitude field_amplitude(const DensityMatrix& rho);

/// Tr(rho a^dag a).
double photon_number(const DensityMatrix& rho);

inline constexpr double kVacuumThreshold = 1e-10;

/// <a^dag a^dag a a> / <a^dag a>^2; empty when <a^dag a> <= 1e-10.
std::optional<double> g2_zero(const DensityMatrix& rho);

/// -sum lambda ln lambda over eigenvalues above 1e-14, in nats.
double von_neumann_entropy(const Eigen::MatrixXd& rho);

double mutual_information(const DensityMatrix& rho);

/// log2 of the trace norm of the partial transpose, clamped at 0; in bits.
double log_negativity(const DensityMatrix& rho, Subsystem transposed = Subsystem::Atom);

struct MeasureReport {
  double atom_coherence = 0.0;
  FieldAmplitude field_amplitude;
  std::optional<double> g2;
  double S_atom = 0.0;
  double S_field = 0.0;
  double S_total = 0.0;
  double mutual_info = 0.0;
  double log_negativity = 0.0;
};

MeasureReport measure(const DensityMatrix& rho);

}  // namespace rabi
