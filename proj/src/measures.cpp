#include "rabi/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rabi {

namespace {

constexpr double kEigenFloor = 1e-14;
constexpr double kMutualInfoClamp = -1e-9;

void check_dim(const Eigen::MatrixXd& m, const BasisSpec& basis) {
  if (m.rows() != basis.dim() || m.cols() != basis.dim())
    throw std::invalid_argument("density matrix dimension " + std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()) + " does not match basis dimension " +
                                std::to_string(basis.dim()));
}

Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

}  // namespace

DensityMatrix::DensityMatrix(Eigen::MatrixXd rho, const BasisSpec& b) : entries(std::move(rho)), basis(b) {
  check_dim(entries, basis);
  if (asymmetry(entries) > 1e-12) throw std::invalid_argument("density matrix is not symmetric");
  if (std::abs(entries.trace() - 1.0) > 1e-12) throw std::invalid_argument("density matrix trace is not 1");
  if (symmetric_eigenvalues(entries).minCoeff() < -1e-10)
    throw std::invalid_argument("density matrix is not positive semidefinite");
}

DensityMatrix DensityMatrix::from_thermal(const ThermalState& state, const BasisSpec& basis) {
  return DensityMatrix(state.rho, basis);
}

DensityMatrix DensityMatrix::pure(const Eigen::VectorXd& psi, const BasisSpec& basis) {
  const Eigen::VectorXd v = psi.normalized();
  Eigen::MatrixXd rho = v * v.transpose();
  rho = (0.5 * (rho + rho.transpose())).eval();
  return DensityMatrix(std::move(rho), basis);
}

Eigen::MatrixXd partial_trace(const DensityMatrix& rho, Subsystem keep) {
  const BasisSpec& b = rho.basis;
  check_dim(rho.entries, b);
  const int f = b.fock_dim();
  if (keep == Subsystem::Atom) {
    Eigen::Matrix2d out;
    for (int s = 0; s < 2; ++s)
      for (int t = 0; t < 2; ++t) out(s, t) = rho.entries.block(s * f, t * f, f, f).trace();
    return out;
  }
  return rho.entries.block(0, 0, f, f) + rho.entries.block(f, f, f, f);
}

Eigen::MatrixXd partial_transpose(const Eigen::MatrixXd& rho, const BasisSpec& basis, Subsystem which) {
  check_dim(rho, basis);
  const int f = basis.fock_dim();
  Eigen::MatrixXd out(rho.rows(), rho.cols());
  if (which == Subsystem::Atom) {
    out.block(0, 0, f, f) = rho.block(0, 0, f, f);
    out.block(f, f, f, f) = rho.block(f, f, f, f);
    out.block(0, f, f, f) = rho.block(f, 0, f, f);
    out.block(f, 0, f, f) = rho.block(0, f, f, f);
  } else {
    for (int s = 0; s < 2; ++s)
      for (int t = 0; t < 2; ++t) out.block(s * f, t * f, f, f) = rho.block(s * f, t * f, f, f).transpose();
  }
  return out;
}

double atom_coherence(const DensityMatrix& rho) { return std::abs(partial_trace(rho, Subsystem::Atom)(0, 1)); }

FieldAmplitude field_amplitude(const DensityMatrix& rho) {
  const BasisSpec& b = rho.basis;
  check_dim(rho.entries, b);
  // Tr(rho a) = sum_{s,n} sqrt(n) rho((s,n), (s,n-1))
  double value = 0.0;
  for (int s = 0; s < 2; ++s)
    for (int n = 1; n <= b.n_max; ++n) value += std::sqrt(static_cast<double>(n)) * rho.entries(b.index(s, n), b.index(s, n - 1));
  return {value, std::abs(value)};
}

double photon_number(const DensityMatrix& rho) {
  const BasisSpec& b = rho.basis;
  check_dim(rho.entries, b);
  double n_mean = 0.0;
  for (int s = 0; s < 2; ++s)
    for (int n = 1; n <= b.n_max; ++n) n_mean += n * rho.entries(b.index(s, n), b.index(s, n));
  return n_mean;
}

std::optional<double> g2_zero(const DensityMatrix& rho) {
  const BasisSpec& b = rho.basis;
  const double n_mean = photon_number(rho);
  if (!(n_mean > kVacuumThreshold)) return std::nullopt;
  // a^dag a^dag a a = n (n - 1) on Fock states
  double pairs = 0.0;
  for (int s = 0; s < 2; ++s)
    for (int n = 2; n <= b.n_max; ++n) pairs += n * (n - 1.0) * rho.entries(b.index(s, n), b.index(s, n));
  return pairs / (n_mean * n_mean);
}

double von_neumann_entropy(const Eigen::MatrixXd& rho) {
  const Eigen::VectorXd lambda = symmetric_eigenvalues(rho);
  double s = 0.0;
  for (Eigen::Index i = 0; i < lambda.size(); ++i)
    if (lambda(i) > kEigenFloor) s -= lambda(i) * std::log(lambda(i));
  return s;
}

double mutual_information(const DensityMatrix& rho) {
  const double s_atom = von_neumann_entropy(partial_trace(rho, Subsystem::Atom));
  const double s_field = von_neumann_entropy(partial_trace(rho, Subsystem::Field));
  const double s_total = von_neumann_entropy(rho.entries);
  double info = s_atom + s_field - s_total;
  if (info < 0.0 && info > kMutualInfoClamp) info = 0.0;
  return info;
}

double log_negativity(const DensityMatrix& rho, Subsystem transposed) {
  const Eigen::MatrixXd gamma = partial_transpose(rho.entries, rho.basis, transposed);
  const double trace_norm = symmetric_eigenvalues(gamma).cwiseAbs().sum();
  return std::max(0.0, std::log2(trace_norm));
}

MeasureReport measure(const DensityMatrix& rho) {
  MeasureReport r;
  const Eigen::MatrixXd atom = partial_trace(rho, Subsystem::Atom);
  const Eigen::MatrixXd field = partial_trace(rho, Subsystem::Field);
  r.atom_coherence = std::abs(atom(0, 1));
  r.field_amplitude = field_amplitude(rho);
  r.g2 = g2_zero(rho);
  r.S_atom = von_neumann_entropy(atom);
  r.S_field = von_neumann_entropy(field);
  r.S_total = von_neumann_entropy(rho.entries);
  r.mutual_info = r.S_atom + r.S_field - r.S_total;
  if (r.mutual_info < 0.0 && r.mutual_info > kMutualInfoClamp) r.mutual_info = 0.0;
  r.log_negativity = log_negativity(rho);
  return r;
}

}  // namespace rabi
