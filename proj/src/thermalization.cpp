#include "rabi/thermalization.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "rabi/errors.hpp"

namespace rabi {

namespace {

// Matrix elements below this fraction of the largest one count as selection-rule zeros.
constexpr double kRelativeElementFloor = 1e-14;
constexpr double kDegenerateGap = 1e-12;

Eigen::MatrixXd coupling_operator(const BasisSpec& basis, BathCoupling c) {
  switch (c) {
    case BathCoupling::FieldQuadrature: return quadrature(basis).entries;
    case BathCoupling::QubitX: return pauli(Pauli::X, basis).entries;
    case BathCoupling::Both: return quadrature(basis).entries + pauli(Pauli::X, basis).entries;
  }
  throw std::invalid_argument("unknown bath coupling");
}

}  // namespace

std::string to_string(BathCoupling c) {
  switch (c) {
    case BathCoupling::FieldQuadrature: return "field";
    case BathCoupling::QubitX: return "qubit";
    case BathCoupling::Both: return "both";
  }
  return "unknown";
}

RateMatrix build_rate_matrix(const SpectralDecomposition& spec, double temperature, BathCoupling coupling,
                             double rate_scale) {
  if (!(temperature > 0.0) || !std::isfinite(temperature))
    throw std::invalid_argument("build_rate_matrix: temperature must be > 0");
  if (!(rate_scale > 0.0)) throw std::invalid_argument("build_rate_matrix: rate_scale must be > 0");

  const Eigen::MatrixXd dressed = spec.vectors.transpose() * coupling_operator(spec.basis, coupling) * spec.vectors;
  const Eigen::MatrixXd strength = dressed.cwiseAbs2();
  const double floor = kRelativeElementFloor * strength.maxCoeff();

  const int n = spec.dim();
  RateMatrix r{Eigen::MatrixXd::Zero(n, n), temperature, coupling};
  for (int hi = 0; hi < n; ++hi) {
    for (int lo = 0; lo < hi; ++lo) {
      const double w = strength(lo, hi);
      if (w <= floor) continue;
      const double gap = spec.energies(hi) - spec.energies(lo);
      if (gap < kDegenerateGap) {
        r.generator(lo, hi) = rate_scale * w;
        r.generator(hi, lo) = rate_scale * w;
        continue;
      }
      const double occupation = 1.0 / std::expm1(gap / temperature);
      r.generator(lo, hi) = rate_scale * w * (occupation + 1.0);  // down: hi -> lo
      r.generator(hi, lo) = rate_scale * w * occupation;          // up: lo -> hi
    }
  }
  for (int col = 0; col < n; ++col) {
    r.generator(col, col) = 0.0;
    r.generator(col, col) = -r.generator.col(col).sum();
  }
  return r;
}

bool is_connected(const RateMatrix& rates) {
  const int n = rates.dim();
  if (n == 0) return false;
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int visited = 1;
  while (!stack.empty()) {
    const int k = stack.back();
    stack.pop_back();
    for (int j = 0; j < n; ++j) {
      if (seen[j] || j == k) continue;
      if (rates.generator(j, k) > 0.0 || rates.generator(k, j) > 0.0) {
        seen[j] = 1;
        ++visited;
        stack.push_back(j);
      }
    }
  }
  return visited == n;
}

Eigen::VectorXd steady_populations(const RateMatrix& rates) {
  if (!is_connected(rates))
    throw ReducibleGeneratorError("rate matrix is reducible: the " + to_string(rates.coupling) +
                                  " coupling does not connect every level");
  const int n = rates.dim();
  // Replace the last balance equation by normalization; the remaining rows are
  // independent because the kernel is one-dimensional.
  Eigen::MatrixXd system = rates.generator;
  system.row(n - 1).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  rhs(n - 1) = 1.0;
  Eigen::VectorXd p = system.fullPivLu().solve(rhs);
  for (int i = 0; i < n; ++i)
    if (p(i) < 0.0) p(i) = 0.0;
  return p / p.sum();
}

double detailed_balance_violation(const RateMatrix& rates, const Eigen::VectorXd& energies) {
  const int n = rates.dim();
  const double e0 = energies(0);
  const double t = rates.temperature;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      // R(j<-i) exp(-E_i/T) vs R(i<-j) exp(-E_j/T), ground-shifted
      const double forward = rates.generator(j, i) * std::exp(-(energies(i) - e0) / t);
      const double backward = rates.generator(i, j) * std::exp(-(energies(j) - e0) / t);
      const double scale = std::max(std::abs(forward), std::abs(backward));
      if (scale == 0.0) continue;
      worst = std::max(worst, std::abs(forward - backward) / scale);
    }
  }
  return worst;
}

Eigen::VectorXd relax(const RateMatrix& rates, Eigen::VectorXd populations, double dt, int steps) {
  for (int k = 0; k < steps; ++k) populations += dt * (rates.generator * populations);
  return populations;
}

}  // namespace rabi
