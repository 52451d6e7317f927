#include "rabi/commands.hpp"

#include <cmath>
#include <iostream>

#include "rabi/csv.hpp"
#include "rabi/errors.hpp"
#include "rabi/measures.hpp"
#include "rabi/sweep.hpp"
#include "rabi/thermalization.hpp"

namespace rabi {

namespace {

void maybe_ghz(std::ostream& out, const RunConfig& cfg) {
  if (cfg.ghz) out << ghz_comment(*cfg.ghz) << '\n';
}

const SpectralDecomposition& pick(const StageSpectra& stages, Stage stage) {
  return stage == Stage::Hot ? stages.hot : stages.cold;
}

double stage_temperature(const CycleSpec& spec, Stage stage) { return stage == Stage::Hot ? spec.T_h : spec.T_l; }

void run_spectrum(const RunConfig& cfg) {
  const StageSpectra stages = stage_hamiltonians(cfg.spec);
  const SpectralDecomposition& spec = pick(stages, cfg.stage);
  const Eigen::VectorXd pops = boltzmann_populations(spec.energies, stage_temperature(cfg.spec, cfg.stage));
  const int shown = cfg.levels == 0 ? spec.dim() : std::min(cfg.levels, spec.dim());
  write_output(cfg.output, [&](std::ostream& out) {
    maybe_ghz(out, cfg);
    out << "level,energy,population\n";
    for (int i = 0; i < shown; ++i)
      out << i << ',' << format_number(spec.energies(i)) << ',' << format_number(pops(i)) << '\n';
  });
}

void run_cycle_command(const RunConfig& cfg) {
  SweepRow row = evaluate_point(cfg.spec, cfg.measures);
  if (!row.error.empty()) throw NumericalError(row.error);
  emit_csv({row}, cfg.output, {cfg.measures, cfg.ghz});
}

void run_sweep_command(const RunConfig& cfg, std::ostream& log) {
  const std::vector<SweepRow> rows = run_sweep(*cfg.grid, cfg.measures, cfg.workers);
  int failures = 0;
  for (const SweepRow& r : rows) failures += r.error.empty() ? 0 : 1;
  if (failures) log << "sweep: " << failures << " of " << rows.size() << " points failed (see error column)\n";
  emit_csv(rows, cfg.output, {cfg.measures, cfg.ghz});
}

void run_measures(const RunConfig& cfg) {
  const StageSpectra stages = stage_hamiltonians(cfg.spec);
  write_output(cfg.output, [&](std::ostream& out) {
    maybe_ghz(out, cfg);
    out << "stage,T,coherence,amplitude,amplitude_abs,g2,S_atom,S_field,S_total,I,E_N\n";
    for (Stage stage : {Stage::Hot, Stage::Cold}) {
      const SpectralDecomposition& spec = pick(stages, stage);
      const double t = stage_temperature(cfg.spec, stage);
      const MeasureReport m = measure(DensityMatrix::from_thermal(gibbs_state(spec, t), spec.basis));
      out << (stage == Stage::Hot ? "hot" : "cold") << ',' << format_number(t) << ','
          << format_number(m.atom_coherence) << ',' << format_number(m.field_amplitude.value) << ','
          << format_number(m.field_amplitude.magnitude) << ',' << format_optional(m.g2) << ','
          << format_number(m.S_atom) << ',' << format_number(m.S_field) << ',' << format_number(m.S_total) << ','
          << format_number(m.mutual_info) << ',' << format_number(m.log_negativity) << '\n';
    }
  });
}

void run_ts_diagram(const RunConfig& cfg) {
  const TSDiagram d = ts_diagram(cfg.spec, cfg.points_per_isochore);
  const CycleResult r = run_cycle(cfg.spec);
  write_output(cfg.output, [&](std::ostream& out) {
    maybe_ghz(out, cfg);
    out << "# W=" << format_number(r.W) << " loop_area=" << format_number(d.loop_area)
        << " eta=" << format_optional(r.eta) << " corner_efficiency=" << format_number(d.corner_efficiency)
        << " carnot=" << format_number(r.carnot) << '\n';
    out << "# T2_star=" << format_number(d.T2_star) << " T4_star=" << format_number(d.T4_star)
        << " S_high=" << format_number(d.S_high) << " S_low=" << format_number(d.S_low) << '\n';
    out << "branch,T,S\n";
    for (const TSPoint& p : d.hot_isochore) out << "hot," << format_number(p.T) << ',' << format_number(p.S) << '\n';
    for (const TSPoint& p : d.cold_isochore)
      out << "cold," << format_number(p.T) << ',' << format_number(p.S) << '\n';
  });
}

void run_verify(const RunConfig& cfg, std::ostream& log) {
  const StageSpectra stages = stage_hamiltonians(cfg.spec);
  const SpectralDecomposition& spec = pick(stages, cfg.stage);
  const double t = stage_temperature(cfg.spec, cfg.stage);
  const RateMatrix rates = build_rate_matrix(spec, t, cfg.coupling, cfg.rate_scale);
  const Eigen::VectorXd steady = steady_populations(rates);
  const Eigen::VectorXd gibbs = boltzmann_populations(spec.energies, t);
  const double worst = (steady - gibbs).cwiseAbs().maxCoeff();
  write_output(cfg.output, [&](std::ostream& out) {
    maybe_ghz(out, cfg);
    out << "level,energy,boltzmann,steady,abs_diff\n";
    for (int i = 0; i < spec.dim(); ++i)
      out << i << ',' << format_number(spec.energies(i)) << ',' << format_number(gibbs(i)) << ','
          << format_number(steady(i)) << ',' << format_number(std::abs(steady(i) - gibbs(i))) << '\n';
  });
  log << "verify-thermalization: coupling=" << to_string(cfg.coupling) << " T=" << format_number(t)
      << " max |steady - boltzmann| = " << format_number(worst) << '\n';
}

}  // namespace

void execute(const RunConfig& cfg, std::ostream& log) {
  switch (cfg.command) {
    case Command::Spectrum: return run_spectrum(cfg);
    case Command::Cycle: return run_cycle_command(cfg);
    case Command::Sweep: return run_sweep_command(cfg, log);
    case Command::Measures: return run_measures(cfg);
    case Command::TsDiagram: return run_ts_diagram(cfg);
    case Command::VerifyThermalization: return run_verify(cfg, log);
  }
}

int run_cli(const std::vector<std::string>& argv, std::ostream& log) {
  RunConfig cfg;
  try {
    cfg = parse_config(argv);
  } catch (const HelpRequested& h) {
    std::cout << h.text;
    return kExitOk;
  } catch (const ConfigError& e) {
    log << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  try {
    execute(cfg, log);
  } catch (const ConfigError& e) {
    log << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    log << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    log << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace rabi
