#ifndef CPRSNP_ERROR_HPP
#define CPRSNP_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cprsnp {

/// Base class of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An instance violates its structural invariants.
class InstanceError : public Error {
 public:
  using Error::Error;
};

/// An argument violates an operation's precondition.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A MILP model is malformed (unknown variable, inverted bounds, non-finite data).
class ModelError : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed a configured size guard.
class SizeGuardError : public Error {
 public:
  using Error::Error;
};

/// The LP part of a separation MIP returned a point that is not 0/1 within tolerance.
class NonVertexSolution : public Error {
 public:
  using Error::Error;
};

/// Malformed instance or design file. Carries the 1-based line number (0 when not line specific).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace cprsnp

#endif
