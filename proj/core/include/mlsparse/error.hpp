#pragma once

#include <stdexcept>
#include <string>

namespace mlsparse {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the arguments was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A numerical failure: loss of definiteness, a singular block, CG breakdown.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A relaxation broke its contract (objective increase, moved a frozen variable).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// A line search found no decreasing step.
class StagnationError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file or stream.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace mlsparse
