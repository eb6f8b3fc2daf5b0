#pragma once

#include <stdexcept>
#include <string>

namespace orlicz {

/// Argument (or required inverse value) exceeds the evaluatable range of a
/// Young function.
struct OverflowDomainError : std::domain_error {
  explicit OverflowDomainError(const std::string& what) : std::domain_error(what) {}
};

/// The Young function failed its strict-monotonicity certification.
struct NotInvertibleError : std::domain_error {
  explicit NotInvertibleError(const std::string& what) : std::domain_error(what) {}
};

struct OutOfIntervalError : std::out_of_range {
  explicit OutOfIntervalError(const std::string& what) : std::out_of_range(what) {}
};

struct IncompatibleIntervalsError : std::invalid_argument {
  explicit IncompatibleIntervalsError(const std::string& what) : std::invalid_argument(what) {}
};

/// Invalid experiment configuration (bad JSON, unknown field, violated bound).
/// `where` carries a JSON-pointer-like path to the offending field.
struct ConfigError : std::runtime_error {
  ConfigError(const std::string& where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

}  // namespace orlicz
