#pragma once

#include <stdexcept>
#include <string>

namespace cavmag {

// Invalid or inconsistent run configuration (bad values, unknown keys,
// violated type invariants at construction time).  CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input data (Touchstone, CSV, grid files).  Carries a 1-based
// line number when one is known.  CLI exit code 3.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, long line = 0)
      : std::runtime_error(line > 0 ? what + " (line " + std::to_string(line) + ")" : what),
        line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

// Numerical singularity hit during model evaluation (vanishing denominator,
// singular coupling matrix, eigensolver failure).  CLI exit code 4.
class SingularityError : public std::runtime_error {
 public:
  explicit SingularityError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cavmag
