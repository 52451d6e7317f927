#pragma once

#include <stdexcept>
#include <string>

namespace rabi {

/// Base for failures of the numerical pipeline (exit code 4 in the CLI).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EigensolverError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Raised when the Fock cutoff cannot be converged within the allowed range.
class ConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// The level graph of a rate matrix has more than one component.
class ReducibleGeneratorError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// T-S loop cannot be closed (no positive work or entropy matching failed).
class LoopError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace rabi

namespace rabi {

/// Invalid configuration (exit code 2 in the CLI).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Output could not be written (exit code 3 in the CLI).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rabi
