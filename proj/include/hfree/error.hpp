#pragma once

#include <stdexcept>
#include <string>

namespace hfree {

/// Base of every error raised by the library. `exit_code()` is the process
/// status the CLI reports for it.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const noexcept { return 4; }
  virtual const char* kind() const noexcept { return "internal"; }
};

/// Invalid argument or configuration supplied by the caller.
class ParameterError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 2; }
  const char* kind() const noexcept override { return "parameter"; }
};

/// Mathematically undefined input (e.g. 2-density of a graph on < 3 vertices).
class DomainError : public ParameterError {
 public:
  using ParameterError::ParameterError;
  const char* kind() const noexcept override { return "domain"; }
};

/// A caller broke an operation's precondition.
class PreconditionError : public ParameterError {
 public:
  using ParameterError::ParameterError;
  const char* kind() const noexcept override { return "precondition"; }
};

/// Inputs are inconsistent with each other (e.g. a tree edge without birthtime).
class DataError : public ParameterError {
 public:
  using ParameterError::ParameterError;
  const char* kind() const noexcept override { return "data"; }
};

/// The request is well-formed but exceeds what exact search can handle.
class CapabilityError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 3; }
  const char* kind() const noexcept override { return "capability"; }
};

/// Floating-point evaluation left the representable range.
class NumericRangeError : public CapabilityError {
 public:
  using CapabilityError::CapabilityError;
  const char* kind() const noexcept override { return "numeric-range"; }
};

}  // namespace hfree
