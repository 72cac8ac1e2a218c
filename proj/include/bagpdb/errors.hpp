#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bagpdb {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed query text or table document. `position` is a byte offset for
/// queries and a 1-based line number for table files.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Structurally valid input that violates a semantic rule (free variable,
/// arity mismatch, duplicate fact, invalid distribution parameter).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A caller passed input outside an operation's contract.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// No polynomial-time algorithm applies and the brute-force fallback is off.
class IntractableError : public Error {
 public:
  using Error::Error;
};

/// World enumeration refused: infinite support or the cap would be exceeded.
class EnumerationError : public Error {
 public:
  using Error::Error;
};

/// Exact arithmetic produced a value that has no exact rational answer.
class ArithmeticError : public Error {
 public:
  using Error::Error;
};

}  // namespace bagpdb
