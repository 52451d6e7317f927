#include "rabi/csv.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <variant>

#include "rabi/errors.hpp"

namespace rabi {

namespace {

constexpr const char* kMeasureFields[] = {"coherence", "amplitude", "amplitude_abs", "g2", "S_atom",
                                           "S_field",   "S_total",   "I",             "E_N"};

std::optional<double> ratio(double cold, double hot) {
  if (hot == 0.0) return std::nullopt;
  return cold / hot;
}

void append_measures(std::vector<std::string>& cells, const std::optional<MeasureReport>& m) {
  if (!m) {
    cells.insert(cells.end(), std::size(kMeasureFields), "");
    return;
  }
  cells.push_back(format_number(m->atom_coherence));
  cells.push_back(format_number(m->field_amplitude.value));
  cells.push_back(format_number(m->field_amplitude.magnitude));
  cells.push_back(format_optional(m->g2));
  cells.push_back(format_number(m->S_atom));
  cells.push_back(format_number(m->S_field));
  cells.push_back(format_number(m->S_total));
  cells.push_back(format_number(m->mutual_info));
  cells.push_back(format_number(m->log_negativity));
}

void write_line(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << cells[i];
  }
  out << '\n';
}

}  // namespace

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string format_optional(const std::optional<double>& x) { return x ? format_number(*x) : std::string(); }

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string ghz_comment(double ghz) {
  // E = h f with f = ghz GHz per unit; T = h f / k_B = 47.9924 mK per GHz.
  return "# units: energies in hbar*omega0, temperatures in hbar*omega0/k_B; omega0/2pi = " +
         format_number(ghz) + " GHz, so 1 energy unit = " + format_number(ghz) +
         " GHz and 1 temperature unit = " + format_number(ghz * 47.99243073) + " mK";
}

std::vector<std::string> row_columns(bool measures) {
  std::vector<std::string> cols = {"g",       "T_h",      "T_l",     "Q1",      "Q2",  "W",   "eta",
                                   "regime",  "carnot",   "protocol", "omega_h", "omega_l", "g_h", "g_l",
                                   "n_max"};
  if (measures) {
    for (const char* stage : {"hot", "cold"})
      for (const char* f : kMeasureFields) cols.push_back(std::string(stage) + "_" + f);
    for (const char* r : {"coherence_ratio", "amplitude_ratio", "I_ratio", "E_N_ratio"}) cols.push_back(r);
  }
  cols.push_back("error");
  return cols;
}

void write_rows(const std::vector<SweepRow>& rows, std::ostream& out, const CsvOptions& options) {
  if (options.ghz) out << ghz_comment(*options.ghz) << '\n';
  write_line(out, row_columns(options.measures));
  for (const SweepRow& row : rows) {
    const CycleSpec& s = row.spec;
    const HamiltonianParams hot = s.hot_params();
    const HamiltonianParams cold = s.cold_params();
    const bool frequency = std::holds_alternative<ChangeFrequency>(s.protocol);

    std::vector<std::string> cells;
    cells.push_back(format_number(cold.g));
    cells.push_back(format_number(s.T_h));
    cells.push_back(format_number(s.T_l));
    if (row.result) {
      const CycleResult& r = *row.result;
      cells.push_back(format_number(r.Q1));
      cells.push_back(format_number(r.Q2));
      cells.push_back(format_number(r.W));
      cells.push_back(format_optional(r.eta));
      cells.push_back(to_string(r.regime));
      cells.push_back(format_number(r.carnot));
    } else {
      cells.insert(cells.end(), 6, "");
    }
    cells.push_back(frequency ? "frequency" : "coupling");
    cells.push_back(format_number(hot.omega));
    cells.push_back(format_number(cold.omega));
    cells.push_back(format_number(hot.g));
    cells.push_back(format_number(cold.g));
    cells.push_back(row.result ? std::to_string(row.result->n_max) : std::string());
    if (options.measures) {
      append_measures(cells, row.hot);
      append_measures(cells, row.cold);
      if (row.hot && row.cold) {
        cells.push_back(format_optional(ratio(row.cold->atom_coherence, row.hot->atom_coherence)));
        cells.push_back(
            format_optional(ratio(row.cold->field_amplitude.magnitude, row.hot->field_amplitude.magnitude)));
        cells.push_back(format_optional(ratio(row.cold->mutual_info, row.hot->mutual_info)));
        cells.push_back(format_optional(ratio(row.cold->log_negativity, row.hot->log_negativity)));
      } else {
        cells.insert(cells.end(), 4, "");
      }
    }
    cells.push_back(csv_escape(row.error));
    write_line(out, cells);
  }
}

void write_output(const std::string& path, const std::function<void(std::ostream&)>& write) {
  if (path == "-") {
    write(std::cout);
    std::cout.flush();
    if (!std::cout) throw IoError("failed writing to stdout");
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open output file '" + path + "'");
  write(out);
  out.flush();
  if (!out) throw IoError("failed writing output file '" + path + "'");
}

void emit_csv(const std::vector<SweepRow>& rows, const std::string& path, const CsvOptions& options) {
  write_output(path, [&](std::ostream& out) { write_rows(rows, out, options); });
}

}  // namespace rabi
