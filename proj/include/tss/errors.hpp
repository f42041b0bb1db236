#pragma once

#include <stdexcept>
#include <string>

namespace tss {

// Raised when an exact (enumerative) computation would exceed its configured
// state budget. Callers are expected to fall back to Monte Carlo.
class CapExceeded : public std::length_error {
 public:
  explicit CapExceeded(const std::string& what) : std::length_error(what) {}
};

class EmptyTypicalSet : public std::domain_error {
 public:
  explicit EmptyTypicalSet(const std::string& what) : std::domain_error(what) {}
};

// Exact attack evaluation is not available for this scheme instance.
class InfeasibleExact : public std::runtime_error {
 public:
  explicit InfeasibleExact(const std::string& what) : std::runtime_error(what) {}
};

class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace tss
