#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lpmlens {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input does not follow the expected layout (missing column, bad header, ...).
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Input parsed correctly but contained no events.
class EmptyLogError : public Error {
 public:
  using Error::Error;
};

/// Malformed structured input; carries the 1-based line of the failure.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A documented precondition of an operation was violated by the caller.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// A metric or report cannot be computed from the given inputs.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// Work was cancelled because its deadline passed.
class TimeoutError : public Error {
 public:
  using Error::Error;
};

}  // namespace lpmlens
