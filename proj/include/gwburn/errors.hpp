#pragma once

#include <stdexcept>
#include <string>

namespace gwburn {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A builtin parameter or custom pmf violates the criticality conditions.
struct InvalidParameterError : Error {
  using Error::Error;
};

/// A degree sequence fails the preorder partial-sum conditions.
struct InvalidSequenceError : Error {
  using Error::Error;
};

/// Cyclic rotation requested for a sequence whose sum is not s-1.
struct BadSumError : Error {
  using Error::Error;
};

/// Requested size is off the span lattice (n with n mod h != 1).
struct IncompatibleSizeError : Error {
  using Error::Error;
};

/// Rejection sampler exceeded its attempt budget.
struct RejectionLimitError : Error {
  using Error::Error;
};

/// Instance exceeds a configured work or size cap.
struct CapExceededError : Error {
  using Error::Error;
};

/// A burning schedule selected a source that was already burning.
struct SourceAlreadyBurningError : Error {
  SourceAlreadyBurningError(int round, const std::string& what)
      : Error(what), round_index(round) {}
  int round_index;
};

/// CLI configuration rejected before any work starts (exit code 2).
struct ConfigError : Error {
  using Error::Error;
};

/// A library-level invariant failed; indicates a bug (exit code 4).
struct InternalInvariantError : Error {
  using Error::Error;
};

}  // namespace gwburn
