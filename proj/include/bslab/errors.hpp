#pragma once

#include <stdexcept>
#include <string>

namespace bslab {

// Invalid user-facing configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A configured enumeration/size budget was exceeded (CLI exit code 3).
// Never silently truncate: computations that cannot finish within budget fail.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// An internal invariant failed to hold (CLI exit code 4).
class InvariantViolation : public std::runtime_error {
 public:
  explicit InvariantViolation(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bslab
