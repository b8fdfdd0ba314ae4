#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hsp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range arguments.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A graph (or hypergraph) that must be connected is not, or an update
/// would disconnect it.
class ConnectivityError : public Error {
 public:
  using Error::Error;
};

/// The reduced Laplacian could not be factored to working precision.
class ConditioningError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of a mathematical function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Brute-force routine invoked on an instance too large to enumerate.
class GuardError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an algorithm does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace hsp
