#pragma once

#include <string>

#include <Eigen/Dense>

#include "rabi/spectral.hpp"

namespace rabi {

/// System operator through which the bath acts.
enum class BathCoupling { FieldQuadrature, QubitX, Both };

std::string to_string(BathCoupling c);

/// Secular population generator in the dressed basis: column n holds the
/// rates out of level n, so dp/dt = generator * p.
struct RateMatrix {
  Eigen::MatrixXd generator;
  double temperature = 0.0;
  BathCoupling coupling = BathCoupling::Both;

  int dim() const { return static_cast<int>(generator.rows()); }
};

/// Rates obey detailed balance with Bose factors of the transition energy,
/// weighted by squared dressed matrix elements of the coupling operator.
/// Exactly degenerate pairs exchange at rate_scale |A_mn|^2 in both directions.
RateMatrix build_rate_matrix(const SpectralDecomposition& spec, double temperature, BathCoupling coupling,
                             double rate_scale);

/// Normalized kernel of the generator. Throws ReducibleGeneratorError when the
/// level graph is disconnected.
Eigen::VectorXd steady_populations(const RateMatrix& rates);

/// True when every level reaches every other through nonzero rates.
bool is_connected(const RateMatrix& rates);

/// Largest relative violation of detailed balance over all connected pairs.
double detailed_balance_violation(const RateMatrix& rates, const Eigen::VectorXd& energies);

/// Explicit Euler integration of dp/dt = R p with step dt.
Eigen::VectorXd relax(const RateMatrix& rates, Eigen::VectorXd populations, double dt, int steps);

}  // namespace rabi
