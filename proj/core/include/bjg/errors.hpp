#pragma once

#include <stdexcept>
#include <string>

namespace bjg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Incompatible inputs: dimension or field mismatch, unknown norm, bad weights.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of the operation (x = 0 where x != 0 is
/// required, nonpositive step, non-unit direction, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A theorem hypothesis or constructor precondition is not met.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A finite-support vector would exceed the capacity of its space.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Malformed or schema-violating input data.
class DataError : public Error {
 public:
  using Error::Error;
};

/// Bad command-line usage or an unknown suite name.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// A constructed object failed its own numerical re-verification.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace bjg
