#include "rabi/operators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rabi {

BasisSpec::BasisSpec(int n) : n_max(n) {
  if (n < 1) throw std::invalid_argument("n_max must be >= 1, got " + std::to_string(n));
}

HamiltonianParams HamiltonianParams::from_omega(double omega, double g) {
  HamiltonianParams p;
  p.omega = omega;
  p.delta = 0.5 * omega;
  p.epsilon = 0.005 * omega;
  p.g = g;
  return p;
}

void HamiltonianParams::validate() const {
  if (!(omega > 0.0)) throw std::invalid_argument("omega must be > 0");
  if (!(delta >= 0.0)) throw std::invalid_argument("delta must be >= 0");
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be >= 0");
  if (!(g >= 0.0)) throw std::invalid_argument("g must be >= 0");
}

namespace {

void check_basis(const BasisSpec& basis) {
  if (basis.n_max < 1) throw std::invalid_argument("invalid basis: n_max < 1");
}

}  // namespace

OperatorMatrix annihilation(const BasisSpec& basis) {
  check_basis(basis);
  OperatorMatrix a{Eigen::MatrixXd::Zero(basis.dim(), basis.dim()), false};
  for (int s = 0; s < 2; ++s)
    for (int n = 1; n <= basis.n_max; ++n)
      a.entries(basis.index(s, n - 1), basis.index(s, n)) = std::sqrt(static_cast<double>(n));
  return a;
}

OperatorMatrix creation(const BasisSpec& basis) {
  OperatorMatrix a = annihilation(basis);
  a.entries.transposeInPlace();
  return a;
}

OperatorMatrix number(const BasisSpec& basis) {
  check_basis(basis);
  OperatorMatrix n_op{Eigen::MatrixXd::Zero(basis.dim(), basis.dim()), true};
  for (int s = 0; s < 2; ++s)
    for (int n = 0; n <= basis.n_max; ++n) n_op.entries(basis.index(s, n), basis.index(s, n)) = n;
  return n_op;
}

OperatorMatrix quadrature(const BasisSpec& basis) {
  OperatorMatrix x = annihilation(basis);
  x.entries += x.entries.transpose().eval();
  x.hermitian = true;
  return x;
}

OperatorMatrix pauli(Pauli which, const BasisSpec& basis) {
  check_basis(basis);
  OperatorMatrix sigma{Eigen::MatrixXd::Zero(basis.dim(), basis.dim()), true};
  for (int n = 0; n <= basis.n_max; ++n) {
    const int lo = basis.index(0, n);
    const int hi = basis.index(1, n);
    if (which == Pauli::Z) {
      sigma.entries(lo, lo) = -1.0;
      sigma.entries(hi, hi) = 1.0;
    } else {
      sigma.entries(lo, hi) = 1.0;
      sigma.entries(hi, lo) = 1.0;
    }
  }
  return sigma;
}

OperatorMatrix build_hamiltonian(const HamiltonianParams& p, const BasisSpec& basis) {
  p.validate();
  check_basis(basis);
  // Assembled entrywise; every term is real in the bare product basis.
  OperatorMatrix h{Eigen::MatrixXd::Zero(basis.dim(), basis.dim()), true};
  auto& m = h.entries;
  for (int n = 0; n <= basis.n_max; ++n) {
    const int lo = basis.index(0, n);
    const int hi = basis.index(1, n);
    m(lo, lo) = -p.delta + p.omega * n;
    m(hi, hi) = p.delta + p.omega * n;
    m(lo, hi) = p.epsilon;
    m(hi, lo) = p.epsilon;
    if (n < basis.n_max) {
      const double c = p.g * std::sqrt(static_cast<double>(n + 1));
      // sx (a + a^dag) couples (s, n) <-> (1 - s, n + 1)
      m(lo, basis.index(1, n + 1)) = c;
      m(basis.index(1, n + 1), lo) = c;
      m(hi, basis.index(0, n + 1)) = c;
      m(basis.index(0, n + 1), hi) = c;
    }
  }
  return h;
}

double asymmetry(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("asymmetry: matrix is not square");
  return (m - m.transpose()).cwiseAbs().maxCoeff();
}

}  // namespace rabi
