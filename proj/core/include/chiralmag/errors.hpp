#pragma once

#include <stdexcept>
#include <string>

namespace chiralmag {

/// Scenario file or parameter validation failure. CLI maps this to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A cell magnetization of (near) zero length cannot be projected back to the
/// unit sphere. The message names the offending cell.
class DegenerateStateError : public std::runtime_error {
 public:
  explicit DegenerateStateError(const std::string& what)
      : std::runtime_error(what) {}
};

/// Linear solver did not reach the requested residual within its budget.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double residual, int iterations)
      : std::runtime_error(what), residual(residual), iterations(iterations) {}
  double residual = 0.0;
  int iterations = 0;
};

}  // namespace chiralmag
