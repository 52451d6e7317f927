#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rabi/cycle.hpp"
#include "rabi/thermalization.hpp"

namespace rabi {

enum class Command { Spectrum, Cycle, Sweep, Measures, TsDiagram, VerifyThermalization };

std::string to_string(Command c);

enum class SweepVar { G, T_h, T_l, G_l, G_h, Omega_h };

std::string to_string(SweepVar v);

/// Linear inclusive grid over one cycle parameter.
struct SweepGrid {
  SweepVar variable = SweepVar::G;
  double start = 0.0;
  double stop = 1.0;
  int points = 2;
  CycleSpec fixed;

  void validate() const;
  double value(int i) const;
  /// The template with the swept variable set to value(i).
  CycleSpec spec_at(int i) const;
};

/// Sets one sweepable parameter; throws ConfigError when the protocol has no such parameter.
void apply_sweep_value(CycleSpec& spec, SweepVar var, double value);

enum class Stage { Hot, Cold };

struct RunConfig {
  Command command = Command::Cycle;
  CycleSpec spec;
  std::optional<SweepGrid> grid;
  bool measures = false;
  std::string output = "-";
  int workers = 1;
  std::optional<double> ghz;
  Stage stage = Stage::Cold;
  int levels = 0;  // 0 = all
  int points_per_isochore = 200;
  BathCoupling coupling = BathCoupling::Both;
  double rate_scale = 1.0;
};

/// Raised by parse_config for --help; carries the help text.
struct HelpRequested {
  std::string text;
};

/// Reads a `key = value` file with `#` comments into canonical (underscore) keys.
/// Unknown keys and malformed lines throw ConfigError.
std::map<std::string, std::string> read_config_file(const std::string& path);

/// argv[0] is the program name. Flags override config-file values.
RunConfig parse_config(const std::vector<std::string>& argv);

}  // namespace rabi
