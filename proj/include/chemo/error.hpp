#pragma once

#include <stdexcept>
#include <string>

namespace chemo {

/// Precondition on a numeric argument was violated (e.g. p <= 1, mu <= 0).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A field or state carries NaN/Inf, or a scheme invariant broke beyond tolerance.
class CorruptionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Configuration text could not be parsed or failed semantic validation.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace chemo
