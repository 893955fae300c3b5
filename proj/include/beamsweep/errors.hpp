#pragma once

#include <stdexcept>
#include <string>

namespace beamsweep {

// Invalid configuration (bad sizes, out-of-range parameters, mismatched weights).
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// Invalid input data (too few samples, malformed files, short profiles).
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// A caller broke an operation's precondition in a way that indicates a bug,
// e.g. feeding a non-minimal grid into the Dirichlet interpolator.
class ContractViolation : public std::logic_error {
 public:
  explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

}  // namespace beamsweep
