#include "rabi/config.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>

#include "rabi/errors.hpp"

namespace rabi {

namespace {

struct KeyInfo {
  const char* key;  // canonical, underscore form
  const char* help;
  bool is_flag;
};

constexpr KeyInfo kKeys[] = {
    {"protocol", "adiabatic protocol: frequency | coupling (inferred when omitted)", false},
    {"omega_h", "hot-stage field frequency (frequency protocol)", false},
    {"omega_l", "cold-stage field frequency (frequency protocol)", false},
    {"omega", "field frequency (coupling protocol, default 1)", false},
    {"g", "coupling strength (frequency protocol)", false},
    {"g_h", "hot-stage coupling (coupling protocol)", false},
    {"g_l", "cold-stage coupling (coupling protocol)", false},
    {"t_h", "hot bath temperature", false},
    {"t_l", "cold bath temperature", false},
    {"epsilon_coeff", "bias as a fraction of the stage frequency (default 0.005)", false},
    {"delta_mode", "qubit splitting: scaled (omega_stage/2) | fixed (1/2)", false},
    {"epsilon_mode", "bias: scaled (coeff*omega_stage) | fixed (coeff)", false},
    {"n_max", "Fock cutoff (default 40)", false},
    {"adaptive", "choose the Fock cutoff by doubling until converged", true},
    {"tol", "convergence tolerance for --adaptive (default 1e-8)", false},
    {"output", "output path, - for stdout", false},
    {"workers", "worker threads for sweeps (default 1)", false},
    {"ghz", "annotate output with the unit conversion for omega0/2pi = F GHz", false},
    {"var", "swept variable: g | t-h | t-l | g-l | g-h | omega-h", false},
    {"start", "sweep start", false},
    {"stop", "sweep stop", false},
    {"points", "sweep points (>= 2)", false},
    {"measures", "append hot/cold coherence and correlation measures", true},
    {"stage", "stage for spectrum / verify-thermalization: hot | cold", false},
    {"levels", "number of levels to print (0 = all)", false},
    {"points_per_isochore", "samples per isochore for ts-diagram (default 200)", false},
    {"coupling", "bath coupling: field | qubit | both", false},
    {"rate_scale", "overall rate scale for verify-thermalization", false},
};

std::string flag_name(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  return key;
}

std::string canonical(std::string key) {
  std::replace(key.begin(), key.end(), '-', '_');
  return key;
}

bool known_key(const std::string& key) {
  return std::any_of(std::begin(kKeys), std::end(kKeys), [&](const KeyInfo& k) { return key == k.key; });
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

class Values {
 public:
  explicit Values(std::map<std::string, std::string> v) : values_(std::move(v)) {}

  bool has(const std::string& key) const { return values_.count(key) > 0; }

  const std::string& raw(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("missing required option '" + flag_name(key) + "'");
    return it->second;
  }

  double number(const std::string& key) const {
    const std::string& text = raw(key);
    try {
      std::size_t used = 0;
      const double v = std::stod(text, &used);
      if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
      return v;
    } catch (const std::exception&) {
      throw ConfigError("option '" + flag_name(key) + "' expects a number, got '" + text + "'");
    }
  }

  double number_or(const std::string& key, double fallback) const { return has(key) ? number(key) : fallback; }

  int integer(const std::string& key) const {
    const std::string& text = raw(key);
    try {
      std::size_t used = 0;
      const long v = std::stol(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return static_cast<int>(v);
    } catch (const std::exception&) {
      throw ConfigError("option '" + flag_name(key) + "' expects an integer, got '" + text + "'");
    }
  }

  bool boolean(const std::string& key) const {
    if (!has(key)) return false;
    const std::string& text = raw(key);
    if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
    if (text == "false" || text == "0" || text == "no" || text == "off") return false;
    throw ConfigError("option '" + flag_name(key) + "' expects a boolean, got '" + text + "'");
  }

  template <class Enum>
  Enum choice(const std::string& key, const std::vector<std::pair<std::string, Enum>>& options) const {
    const std::string& text = raw(key);
    for (const auto& [name, value] : options)
      if (text == name) return value;
    std::string allowed;
    for (const auto& [name, value] : options) allowed += (allowed.empty() ? "" : " | ") + name;
    throw ConfigError("option '" + flag_name(key) + "' must be one of " + allowed + ", got '" + text + "'");
  }

 private:
  std::map<std::string, std::string> values_;
};

CycleSpec build_spec(const Values& v, std::optional<SweepVar> swept) {
  auto provided = [&](const std::string& key, SweepVar var) { return v.has(key) || (swept && *swept == var); };
  auto value_or_swept = [&](const std::string& key, SweepVar var, double placeholder) {
    if (swept && *swept == var && !v.has(key)) return placeholder;
    return v.number(key);
  };

  enum class Kind { Frequency, Coupling };
  Kind kind;
  if (v.has("protocol")) {
    kind = v.choice<Kind>("protocol", {{"frequency", Kind::Frequency}, {"coupling", Kind::Coupling}});
  } else {
    const bool coupling_keys = provided("g_h", SweepVar::G_h) || provided("g_l", SweepVar::G_l);
    kind = coupling_keys ? Kind::Coupling : Kind::Frequency;
  }

  CycleSpec spec;
  if (kind == Kind::Frequency) {
    for (const char* k : {"omega", "g_h", "g_l"})
      if (v.has(k)) throw ConfigError("option '" + flag_name(k) + "' does not apply to the frequency protocol");
    ChangeFrequency f;
    f.omega_h = value_or_swept("omega_h", SweepVar::Omega_h, 1.0);
    f.omega_l = v.number("omega_l");
    f.g = value_or_swept("g", SweepVar::G, 0.0);
    spec.protocol = f;
  } else {
    for (const char* k : {"omega_h", "omega_l", "g"})
      if (v.has(k)) throw ConfigError("option '" + flag_name(k) + "' does not apply to the coupling protocol");
    ChangeCoupling c;
    c.omega = v.number_or("omega", 1.0);
    c.g_h = value_or_swept("g_h", SweepVar::G_h, 0.0);
    c.g_l = value_or_swept("g_l", SweepVar::G_l, 0.0);
    spec.protocol = c;
  }
  spec.T_h = value_or_swept("t_h", SweepVar::T_h, 0.0);
  spec.T_l = value_or_swept("t_l", SweepVar::T_l, 0.0);
  spec.epsilon_coeff = v.number_or("epsilon_coeff", 0.005);
  if (v.has("delta_mode"))
    spec.delta_mode = v.choice<DeltaMode>("delta_mode", {{"scaled", DeltaMode::Scaled}, {"fixed", DeltaMode::Fixed}});
  if (v.has("epsilon_mode"))
    spec.epsilon_mode =
        v.choice<EpsilonMode>("epsilon_mode", {{"scaled", EpsilonMode::Scaled}, {"fixed", EpsilonMode::Fixed}});
  if (v.has("n_max")) spec.basis.n_max = v.integer("n_max");
  spec.basis.adaptive = v.boolean("adaptive");
  spec.basis.tol = v.number_or("tol", 1e-8);

  if (spec.epsilon_coeff < 0.0) throw ConfigError("option 'epsilon-coeff' must be >= 0");
  if (spec.basis.n_max < 1) throw ConfigError("option 'n-max' must be >= 1");
  if (!(spec.basis.tol > 0.0)) throw ConfigError("option 'tol' must be > 0");
  return spec;
}

void validate_spec(const CycleSpec& spec, std::optional<SweepVar> swept) {
  // Swept variables are checked per grid point; only check the fixed part here.
  auto unless = [&](SweepVar var) { return !(swept && *swept == var); };
  if (unless(SweepVar::T_l) && spec.T_l < 0.0) throw ConfigError("option 't-l' must be >= 0");
  if (unless(SweepVar::T_h) && unless(SweepVar::T_l) && spec.T_h < spec.T_l)
    throw ConfigError("option 't-h' must be >= t-l");
  if (const auto* f = std::get_if<ChangeFrequency>(&spec.protocol)) {
    if (!(f->omega_l > 0.0)) throw ConfigError("option 'omega-l' must be > 0");
    if (unless(SweepVar::Omega_h) && f->omega_h < f->omega_l) throw ConfigError("option 'omega-h' must be >= omega-l");
    if (unless(SweepVar::G) && f->g < 0.0) throw ConfigError("option 'g' must be >= 0");
  } else {
    const auto& c = std::get<ChangeCoupling>(spec.protocol);
    if (!(c.omega > 0.0)) throw ConfigError("option 'omega' must be > 0");
    if (unless(SweepVar::G_h) && c.g_h < 0.0) throw ConfigError("option 'g-h' must be >= 0");
    if (unless(SweepVar::G_l) && c.g_l < 0.0) throw ConfigError("option 'g-l' must be >= 0");
  }
}

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::Spectrum: return "spectrum";
    case Command::Cycle: return "cycle";
    case Command::Sweep: return "sweep";
    case Command::Measures: return "measures";
    case Command::TsDiagram: return "ts-diagram";
    case Command::VerifyThermalization: return "verify-thermalization";
  }
  return "unknown";
}

std::string to_string(SweepVar v) {
  switch (v) {
    case SweepVar::G: return "g";
    case SweepVar::T_h: return "t-h";
    case SweepVar::T_l: return "t-l";
    case SweepVar::G_l: return "g-l";
    case SweepVar::G_h: return "g-h";
    case SweepVar::Omega_h: return "omega-h";
  }
  return "unknown";
}

void apply_sweep_value(CycleSpec& spec, SweepVar var, double value) {
  switch (var) {
    case SweepVar::T_h: spec.T_h = value; return;
    case SweepVar::T_l: spec.T_l = value; return;
    case SweepVar::G:
    case SweepVar::Omega_h: {
      auto* f = std::get_if<ChangeFrequency>(&spec.protocol);
      if (!f) throw ConfigError("sweep variable '" + to_string(var) + "' requires the frequency protocol");
      (var == SweepVar::G ? f->g : f->omega_h) = value;
      return;
    }
    case SweepVar::G_h:
    case SweepVar::G_l: {
      auto* c = std::get_if<ChangeCoupling>(&spec.protocol);
      if (!c) throw ConfigError("sweep variable '" + to_string(var) + "' requires the coupling protocol");
      (var == SweepVar::G_h ? c->g_h : c->g_l) = value;
      return;
    }
  }
}

void SweepGrid::validate() const {
  if (!(start < stop)) throw ConfigError("sweep requires start < stop");
  if (points < 2) throw ConfigError("option 'points' must be >= 2");
  CycleSpec probe = fixed;
  apply_sweep_value(probe, variable, start);
}

double SweepGrid::value(int i) const {
  if (i == points - 1) return stop;
  return start + (stop - start) * static_cast<double>(i) / static_cast<double>(points - 1);
}

CycleSpec SweepGrid::spec_at(int i) const {
  CycleSpec spec = fixed;
  apply_sweep_value(spec, variable, value(i));
  return spec;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::map<std::string, std::string> values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key = canonical(trim(line.substr(0, eq)));
    const std::string value = trim(line.substr(eq + 1));
    if (!known_key(key)) throw ConfigError(path + ":" + std::to_string(line_no) + ": unknown key '" + key + "'");
    if (value.empty()) throw ConfigError(path + ":" + std::to_string(line_no) + ": empty value for key '" + key + "'");
    values[key] = value;
  }
  return values;
}

RunConfig parse_config(const std::vector<std::string>& argv) {
  CLI::App app{"Generalized Rabi model quantum Otto engine", "rabi-otto"};
  app.require_subcommand(1);

  const std::vector<std::pair<Command, std::string>> commands = {
      {Command::Spectrum, "stage spectrum and thermal populations"},
      {Command::Cycle, "one Otto cycle: heat, work, efficiency"},
      {Command::Sweep, "Otto cycle over a linear parameter grid"},
      {Command::Measures, "coherence and correlation measures of both thermal states"},
      {Command::TsDiagram, "temperature-entropy loop of the cycle"},
      {Command::VerifyThermalization, "rate-equation steady state vs Boltzmann populations"},
  };

  std::string config_path;
  std::map<std::string, std::string> flag_values;
  std::map<std::string, bool> flag_switches;
  std::vector<std::pair<Command, CLI::App*>> subs;
  std::map<std::string, std::vector<CLI::Option*>> options;

  for (const auto& [cmd, description] : commands) {
    CLI::App* sub = app.add_subcommand(to_string(cmd), description);
    sub->add_option("--config", config_path, "key = value configuration file");
    for (const KeyInfo& k : kKeys) {
      std::string name = "--" + flag_name(k.key);
      if (k.key == "output") name = "-o," + name;
      CLI::Option* opt = k.is_flag ? sub->add_flag(name, flag_switches[k.key], k.help)
                                   : sub->add_option(name, flag_values[k.key], k.help);
      options[k.key].push_back(opt);
    }
    subs.emplace_back(cmd, sub);
  }

  std::vector<std::string> reversed(argv.size() > 1 ? argv.begin() + 1 : argv.end(), argv.end());
  std::reverse(reversed.begin(), reversed.end());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  RunConfig cfg;
  for (const auto& [cmd, sub] : subs)
    if (sub->parsed()) cfg.command = cmd;

  std::map<std::string, std::string> merged;
  if (!config_path.empty()) merged = read_config_file(config_path);
  for (const KeyInfo& k : kKeys) {
    const bool given = std::any_of(options[k.key].begin(), options[k.key].end(),
                                   [](const CLI::Option* o) { return o->count() > 0; });
    if (!given) continue;
    merged[k.key] = k.is_flag ? (flag_switches[k.key] ? "true" : "false") : flag_values[k.key];
  }
  const Values v(std::move(merged));

  std::optional<SweepVar> swept;
  if (cfg.command == Command::Sweep) {
    swept = v.choice<SweepVar>("var", {{"g", SweepVar::G},
                                       {"t-h", SweepVar::T_h},
                                       {"t_h", SweepVar::T_h},
                                       {"t-l", SweepVar::T_l},
                                       {"t_l", SweepVar::T_l},
                                       {"g-l", SweepVar::G_l},
                                       {"g_l", SweepVar::G_l},
                                       {"g-h", SweepVar::G_h},
                                       {"g_h", SweepVar::G_h},
                                       {"omega-h", SweepVar::Omega_h},
                                       {"omega_h", SweepVar::Omega_h}});
  } else {
    for (const char* k : {"var", "start", "stop", "points"})
      if (v.has(k)) throw ConfigError("option '" + flag_name(k) + "' only applies to the sweep command");
  }

  cfg.spec = build_spec(v, swept);
  validate_spec(cfg.spec, swept);

  if (swept) {
    SweepGrid grid;
    grid.variable = *swept;
    grid.start = v.number("start");
    grid.stop = v.number("stop");
    grid.points = v.integer("points");
    grid.fixed = cfg.spec;
    grid.validate();
    cfg.grid = grid;
  }

  cfg.measures = v.boolean("measures");
  if (v.has("output")) cfg.output = v.raw("output");
  if (v.has("workers")) cfg.workers = v.integer("workers");
  if (cfg.workers < 1) throw ConfigError("option 'workers' must be >= 1");
  if (v.has("ghz")) {
    cfg.ghz = v.number("ghz");
    if (!(*cfg.ghz > 0.0)) throw ConfigError("option 'ghz' must be > 0");
  }
  if (v.has("stage")) cfg.stage = v.choice<Stage>("stage", {{"hot", Stage::Hot}, {"cold", Stage::Cold}});
  if (v.has("levels")) cfg.levels = v.integer("levels");
  if (cfg.levels < 0) throw ConfigError("option 'levels' must be >= 0");
  if (v.has("points_per_isochore")) cfg.points_per_isochore = v.integer("points_per_isochore");
  if (cfg.points_per_isochore < 16) throw ConfigError("option 'points-per-isochore' must be >= 16");
  if (v.has("coupling"))
    cfg.coupling = v.choice<BathCoupling>(
        "coupling",
        {{"field", BathCoupling::FieldQuadrature}, {"qubit", BathCoupling::QubitX}, {"both", BathCoupling::Both}});
  cfg.rate_scale = v.number_or("rate_scale", 1.0);
  if (!(cfg.rate_scale > 0.0)) throw ConfigError("option 'rate-scale' must be > 0");
  if (cfg.command == Command::VerifyThermalization) {
    const double t = cfg.stage == Stage::Hot ? cfg.spec.T_h : cfg.spec.T_l;
    if (!(t > 0.0)) throw ConfigError("verify-thermalization needs a stage temperature > 0");
  }
  return cfg;
}

}  // namespace rabi
