#pragma once

#include <stdexcept>
#include <string>

namespace fpedss {

// Precondition and invariant violations use std::invalid_argument.
// The two classes below carry the categories that map onto CLI exit codes.

/// Raised when a numerical procedure cannot deliver its contract
/// (quadrature tolerance missed, degenerate zero-mode, divergence, ...).
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Raised by the configuration parser. `line` is 1-based, 0 when the
/// problem is not tied to a line (e.g. a cross-field invariant).
class ConfigError : public std::runtime_error {
public:
  ConfigError(std::string message, int line = 0, std::string key = {})
      : std::runtime_error(std::move(message)), line_(line), key_(std::move(key)) {}

  int line() const noexcept { return line_; }
  const std::string &key() const noexcept { return key_; }

private:
  int line_;
  std::string key_;
};

} // namespace fpedss
