#pragma once

#include <stdexcept>
#include <string>

namespace nullswitch {

// Bad layout / scheme parameters. The CLI maps this to exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// Malformed arguments to an operation (wrong lengths, mismatched layouts).
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// PAPR of an all-zero signal.
class UndefinedPaprError : public std::domain_error {
 public:
  explicit UndefinedPaprError(const std::string& what) : std::domain_error(what) {}
};

// A conventional-scheme run whose transform count exceeds the op budget.
// The CLI maps this to exit code 3.
class WorkloadRefused : public std::runtime_error {
 public:
  WorkloadRefused(const std::string& what, long long suggested_symbols)
      : std::runtime_error(what), suggested_symbols_(suggested_symbols) {}

  long long suggested_symbols() const noexcept { return suggested_symbols_; }

 private:
  long long suggested_symbols_;
};

}  // namespace nullswitch
