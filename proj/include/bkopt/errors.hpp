#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bkopt {

/// Invalid configuration or arguments (bad grid, wrong sample count, parity).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class NumericalFailure {
  BoundaryClosureSingular,  // |1 - (h/2) k(1)| below threshold
  BlowUp,                   // non-finite or |value| > blow-up limit while marching
  SingularGram,             // span least-squares system numerically singular
  RootsNotFound,            // fewer roots than requested in the scan range
};

const char* to_string(NumericalFailure kind);

/// Numerical failure during a solve. `time_index` is the time level reached
/// when marching (or -1 when not applicable).
class NumericalError : public std::runtime_error {
 public:
  NumericalError(NumericalFailure kind, const std::string& what, long time_index = -1)
      : std::runtime_error(what), kind_(kind), time_index_(time_index) {}

  NumericalFailure kind() const noexcept { return kind_; }
  long time_index() const noexcept { return time_index_; }

 private:
  NumericalFailure kind_;
  long time_index_;
};

}  // namespace bkopt
