#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rabi/sweep.hpp"

namespace rabi {

/// 12 significant digits, printf %g style.
std::string format_number(double x);
std::string format_optional(const std::optional<double>& x);
/// Quotes fields that contain commas, quotes or newlines.
std::string csv_escape(const std::string& field);

struct CsvOptions {
  bool measures = false;
  /// Adds a unit-conversion comment line before the header.
  std::optional<double> ghz;
};

std::string ghz_comment(double ghz);

std::vector<std::string> row_columns(bool measures);

void write_rows(const std::vector<SweepRow>& rows, std::ostream& out, const CsvOptions& options);

/// Writes through `write` to a file, or to stdout for "-". Throws IoError.
void write_output(const std::string& path, const std::function<void(std::ostream&)>& write);

void emit_csv(const std::vector<SweepRow>& rows, const std::string& path, const CsvOptions& options);

}  // namespace rabi
