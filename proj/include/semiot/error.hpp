#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace semiot {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition (shape, mass balance, finiteness).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Instance exceeds a hard size cap (brute-force enumeration).
class SizeError : public Error {
 public:
  using Error::Error;
};

/// A solver produced a non-finite intermediate value.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, std::size_t iteration)
      : Error(what + " (iteration " + std::to_string(iteration) + ")"), iteration_(iteration) {}

  std::size_t iteration() const noexcept { return iteration_; }

 private:
  std::size_t iteration_;
};

/// Malformed input file. Carries the 1-based line and the offending field name.
class ParseError : public ValidationError {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& field,
             const std::string& message)
      : ValidationError(source + ":" + std::to_string(line) + ": field '" + field + "': " + message),
        line_(line),
        field_(field) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

}  // namespace semiot
