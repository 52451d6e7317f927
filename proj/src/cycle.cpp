#include "rabi/cycle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rabi/errors.hpp"

namespace rabi {

namespace {

constexpr double kBaseOmega = 1.0;

template <class... Fs>
struct Overload : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overload(Fs...) -> Overload<Fs...>;

HamiltonianParams stage_params(const CycleSpec& spec, double omega, double g) {
  HamiltonianParams p;
  p.omega = omega;
  p.g = g;
  p.delta = spec.delta_mode == DeltaMode::Scaled ? 0.5 * omega : 0.5 * kBaseOmega;
  p.epsilon = spec.epsilon_coeff * (spec.epsilon_mode == EpsilonMode::Scaled ? omega : kBaseOmega);
  return p;
}

}  // namespace

void CycleSpec::validate() const {
  if (!(T_l >= 0.0) || !std::isfinite(T_l)) throw std::invalid_argument("T_l must be >= 0");
  if (!(T_h >= T_l) || !std::isfinite(T_h)) throw std::invalid_argument("T_h must be >= T_l");
  if (!(epsilon_coeff >= 0.0)) throw std::invalid_argument("epsilon_coeff must be >= 0");
  if (!basis.adaptive && basis.n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  if (basis.adaptive && !(basis.tol > 0.0)) throw std::invalid_argument("tolerance must be > 0");
  std::visit(Overload{
                 [](const ChangeFrequency& f) {
                   if (!(f.omega_l > 0.0)) throw std::invalid_argument("omega_l must be > 0");
                   if (!(f.omega_h >= f.omega_l)) throw std::invalid_argument("omega_h must be >= omega_l");
                   if (!(f.g >= 0.0)) throw std::invalid_argument("g must be >= 0");
                 },
                 [](const ChangeCoupling& c) {
                   if (!(c.omega > 0.0)) throw std::invalid_argument("omega must be > 0");
                   if (!(c.g_h >= 0.0) || !(c.g_l >= 0.0))
                     throw std::invalid_argument("g_h and g_l must be >= 0");
                 }},
             protocol);
}

HamiltonianParams CycleSpec::hot_params() const {
  return std::visit(Overload{[&](const ChangeFrequency& f) { return stage_params(*this, f.omega_h, f.g); },
                             [&](const ChangeCoupling& c) { return stage_params(*this, c.omega, c.g_h); }},
                    protocol);
}

HamiltonianParams CycleSpec::cold_params() const {
  return std::visit(Overload{[&](const ChangeFrequency& f) { return stage_params(*this, f.omega_l, f.g); },
                             [&](const ChangeCoupling& c) { return stage_params(*this, c.omega, c.g_l); }},
                    protocol);
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::HeatEngine: return "heat_engine";
    case Regime::RefrigeratorOrHeatPump: return "refrigerator_or_heat_pump";
    case Regime::Idle: return "idle";
  }
  return "unknown";
}

BasisSpec resolve_basis(const CycleSpec& spec) {
  if (!spec.basis.adaptive) return BasisSpec(spec.basis.n_max);
  // Both stages are probed at T_h, the hotter of the two populations they carry.
  const BasisSpec hot = converge_cutoff(spec.hot_params(), spec.T_h, spec.basis.tol);
  const BasisSpec cold = converge_cutoff(spec.cold_params(), spec.T_h, spec.basis.tol);
  return BasisSpec(std::max(hot.n_max, cold.n_max));
}

StageSpectra stage_hamiltonians(const CycleSpec& spec) {
  spec.validate();
  const BasisSpec basis = resolve_basis(spec);
  return {diagonalize(spec.hot_params(), basis), diagonalize(spec.cold_params(), basis)};
}

Regime classify_regime(double W) {
  if (W > kWorkTolerance) return Regime::HeatEngine;
  if (W < -kWorkTolerance) return Regime::RefrigeratorOrHeatPump;
  return Regime::Idle;
}

Regime classify_regime(const CycleResult& result) { return classify_regime(result.W); }

CycleResult cycle_from_spectra(const StageSpectra& stages, double T_h, double T_l) {
  const Eigen::VectorXd& e_hot = stages.hot.energies;
  const Eigen::VectorXd& e_cold = stages.cold.energies;
  if (e_hot.size() != e_cold.size()) throw std::invalid_argument("stage spectra must share one basis");

  const Eigen::VectorXd p_hot = boltzmann_populations(e_hot, T_h);
  const Eigen::VectorXd p_cold = boltzmann_populations(e_cold, T_l);

  CycleResult r;
  r.Q1 = e_hot.dot(p_hot - p_cold);
  r.Q2 = e_cold.dot(p_cold - p_hot);
  r.W = r.Q1 + r.Q2;
  r.regime = classify_regime(r.W);
  if (r.regime == Regime::HeatEngine) r.eta = r.W / r.Q1;
  r.carnot = T_h > 0.0 ? 1.0 - T_l / T_h : 0.0;
  r.n_max = stages.hot.basis.n_max;
  return r;
}

CycleResult run_cycle(const CycleSpec& spec) {
  return cycle_from_spectra(stage_hamiltonians(spec), spec.T_h, spec.T_l);
}

double thermal_entropy(const Eigen::VectorXd& energies, double temperature) {
  return shannon_entropy(boltzmann_populations(energies, temperature));
}

double match_entropy(const Eigen::VectorXd& energies, double target, double t_max) {
  double lo = 0.0;
  double hi = t_max;
  const double s_lo = thermal_entropy(energies, lo);
  const double s_hi = thermal_entropy(energies, hi);
  if (target < s_lo || target > s_hi)
    throw LoopError("entropy matching has no solution in (0, " + std::to_string(t_max) + "]");
  while (hi - lo > 1e-8) {
    const double mid = 0.5 * (lo + hi);
    if (thermal_entropy(energies, mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

std::vector<TSPoint> sample_isochore(const Eigen::VectorXd& energies, double t_from, double t_to, int points) {
  std::vector<TSPoint> out;
  out.reserve(points);
  for (int i = 0; i < points; ++i) {
    const double t = t_from + (t_to - t_from) * i / (points - 1);
    out.push_back({t, thermal_entropy(energies, t)});
  }
  return out;
}

}  // namespace

TSDiagram ts_diagram(const CycleSpec& spec, int points_per_isochore) {
  if (points_per_isochore < 16) throw std::invalid_argument("ts_diagram needs at least 16 points per isochore");
  const StageSpectra stages = stage_hamiltonians(spec);
  const CycleResult cycle = cycle_from_spectra(stages, spec.T_h, spec.T_l);
  if (cycle.W <= 0.0) throw LoopError("T-S loop requires positive work, got W = " + std::to_string(cycle.W));

  TSDiagram d;
  d.S_high = thermal_entropy(stages.hot.energies, spec.T_h);
  d.S_low = thermal_entropy(stages.cold.energies, spec.T_l);
  const double t_max = 10.0 * spec.T_h;
  d.T2_star = match_entropy(stages.cold.energies, d.S_high, t_max);
  d.T4_star = match_entropy(stages.hot.energies, d.S_low, t_max);

  d.hot_isochore = sample_isochore(stages.hot.energies, d.T4_star, spec.T_h, points_per_isochore);
  d.cold_isochore = sample_isochore(stages.cold.energies, spec.T_l, d.T2_star, points_per_isochore);

  // Closed loop: hot isochore upward in S, adiabat, cold isochore downward, adiabat.
  std::vector<TSPoint> loop(d.hot_isochore);
  loop.insert(loop.end(), d.cold_isochore.rbegin(), d.cold_isochore.rend());
  loop.push_back(d.hot_isochore.front());
  double area = 0.0;
  for (std::size_t i = 0; i + 1 < loop.size(); ++i)
    area += 0.5 * (loop[i].T + loop[i + 1].T) * (loop[i + 1].S - loop[i].S);
  d.loop_area = area;
  d.corner_efficiency = 1.0 - d.T2_star / spec.T_h;
  return d;
}

}  // namespace rabi
