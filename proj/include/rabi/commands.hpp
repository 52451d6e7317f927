#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rabi/config.hpp"

namespace rabi {

enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitIo = 3, kExitNumerical = 4 };

/// Executes a parsed configuration; diagnostics go to `log`.
/// Throws ConfigError, IoError or NumericalError.
void execute(const RunConfig& config, std::ostream& log);

/// Parses argv, executes, and maps failures to exit codes.
int run_cli(const std::vector<std::string>& argv, std::ostream& log);

}  // namespace rabi
