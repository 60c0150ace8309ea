#pragma once

#include <stdexcept>
#include <string>

namespace turnpike {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid or inconsistent configuration / input data (CLI exit code 2).
struct ConfigError : Error {
  using Error::Error;
};

/// Two objects that must share a GridSpec do not.
struct GridMismatchError : Error {
  using Error::Error;
};

/// An iterative linear solve failed to reach its residual tolerance.
struct SolverError : Error {
  using Error::Error;
};

/// The eigensolver exhausted its iteration budget.
struct ConvergenceError : Error {
  using Error::Error;
};

/// A rate fit was requested with fewer than the required number of points.
struct InsufficientPointsError : Error {
  using Error::Error;
};

/// An optimizer start mask or a probe schedule violates its preconditions.
struct InfeasibleError : Error {
  using Error::Error;
};

}  // namespace turnpike
