#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mproot {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A decimal literal or table cell could not be parsed.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// An elementary function was called outside its real domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Division by an exact zero. Kept distinct from DomainError so iteration
/// drivers can turn it into a degenerate-step signal.
class DivisionByZero : public Error {
 public:
  using Error::Error;
};

/// Expression text does not match the grammar.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Identifier that is neither x, a named constant, nor a known function.
class UnknownIdentifier : public SyntaxError {
 public:
  using SyntaxError::SyntaxError;
};

/// Interpolation nodes closer than the separation guard allows.
class DegenerateNodes : public Error {
 public:
  using Error::Error;
};

/// A step hit a guarded denominator (or a node collapse) and cannot proceed.
class DegenerateStep : public Error {
 public:
  using Error::Error;
};

class UnknownMethod : public Error {
 public:
  using Error::Error;
};

/// Too few iterates to form an order estimate.
class InsufficientIterates : public Error {
 public:
  using Error::Error;
};

/// Every order estimate in a trace was ill-conditioned.
class IllConditioned : public Error {
 public:
  using Error::Error;
};

/// Two tables being compared do not have the same rows and columns.
class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace mproot
