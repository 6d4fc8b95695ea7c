#pragma once

#include <stdexcept>
#include <string>

namespace hpst {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed chain layout or coupling data (nonpositive coupling, missing
/// parameter binding, broken mirror symmetry, coincident positions).
class ChainError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of an operation (node index, time, grid).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Iterative numerics did not reach tolerance within the iteration budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// No admissible phase-compensating field exists for the given constraints.
class PhaseFitError : public Error {
 public:
  using Error::Error;
};

/// Serialized input could not be decoded.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace hpst
