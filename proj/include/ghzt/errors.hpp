#pragma once

#include <stdexcept>
#include <string>

namespace ghzt {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad range, bad shape, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Requested object would exceed the configured qubit ceiling.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

/// An operator claimed to be Hermitian / unitary but is not.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

class NotPsdError : public Error {
 public:
  using Error::Error;
};

/// The discrimination targets are linearly dependent (b = 0 channel).
class LinearDependenceError : public Error {
 public:
  using Error::Error;
};

/// A POVM failed one of its construction-time invariants.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// Numerical bookkeeping disagreed with itself (e.g. Born probabilities
/// not summing to one).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace ghzt
