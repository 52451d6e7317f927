#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rabi/operators.hpp"
#include "rabi/spectral.hpp"

namespace rabi {

/// Adiabats change the field frequency at fixed coupling.
struct ChangeFrequency {
  double omega_h = 2.0;
  double omega_l = 1.0;
  double g = 0.0;
};

/// Adiabats change the coupling at fixed field frequency.
struct ChangeCoupling {
  double omega = 1.0;
  double g_h = 0.4;
  double g_l = 0.9;
};

using Protocol = std::variant<ChangeFrequency, ChangeCoupling>;

/// How the qubit half-splitting follows the stage frequency.
enum class DeltaMode { Scaled, Fixed };
/// How the bias follows the stage frequency.
enum class EpsilonMode { Scaled, Fixed };

/// Fixed cutoff, or adaptive doubling to the given tolerance.
struct BasisPolicy {
  int n_max = 40;
  bool adaptive = false;
  double tol = 1e-8;
};

struct CycleSpec {
  Protocol protocol = ChangeFrequency{};
  double T_h = 0.35;
  double T_l = 0.05;
  double epsilon_coeff = 0.005;
  DeltaMode delta_mode = DeltaMode::Scaled;
  EpsilonMode epsilon_mode = EpsilonMode::Scaled;
  BasisPolicy basis;

  /// Throws std::invalid_argument. T_h == T_l is accepted (zero-gradient runs).
  void validate() const;

  HamiltonianParams hot_params() const;
  HamiltonianParams cold_params() const;
};

enum class Regime { HeatEngine, RefrigeratorOrHeatPump, Idle };

std::string to_string(Regime r);

struct CycleResult {
  double Q1 = 0.0;
  double Q2 = 0.0;
  double W = 0.0;
  std::optional<double> eta;
  Regime regime = Regime::Idle;
  double carnot = 0.0;
  int n_max = 0;
};

struct StageSpectra {
  SpectralDecomposition hot;
  SpectralDecomposition cold;
};

/// Diagonalizes both stages in one shared basis.
StageSpectra stage_hamiltonians(const CycleSpec& spec);

/// Cutoff chosen by the basis policy (largest adaptive cutoff of the two stages).
BasisSpec resolve_basis(const CycleSpec& spec);

/// Heat, work and efficiency from precomputed stage spectra.
CycleResult cycle_from_spectra(const StageSpectra& stages, double T_h, double T_l);

CycleResult run_cycle(const CycleSpec& spec);

inline constexpr double kWorkTolerance = 1e-12;

Regime classify_regime(double W);
Regime classify_regime(const CycleResult& result);

struct TSPoint {
  double T;
  double S;
};

struct TSDiagram {
  std::vector<TSPoint> hot_isochore;   // ascending T from T4* to T_h
  std::vector<TSPoint> cold_isochore;  // ascending T from T_l to T2*
  double T2_star = 0.0;  // effective temperature after the expansion adiabat
  double T4_star = 0.0;  // effective temperature after the compression adiabat
  double S_high = 0.0;
  double S_low = 0.0;
  double loop_area = 0.0;
  /// 1 - T2*/T_h from the loop corners.
  double corner_efficiency = 0.0;
};

/// Entropy of the Gibbs state of a spectrum at temperature T.
double thermal_entropy(const Eigen::VectorXd& energies, double temperature);

/// Solves S(T) = target for T in (0, t_max] by bisection to 1e-8 in T.
/// Throws LoopError when the target is outside the bracketed range.
double match_entropy(const Eigen::VectorXd& energies, double target, double t_max);

TSDiagram ts_diagram(const CycleSpec& spec, int points_per_isochore);

}  // namespace rabi
