#pragma once

#include <stdexcept>
#include <string>

namespace hom {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two values live over history spaces of different size.
class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::size_t lhs, std::size_t rhs)
      : Error("incompatible history spaces: " + std::to_string(lhs) + " vs " + std::to_string(rhs)) {}
};

/// A table-mode measure was asked for a point it does not cover.
class UnsampledPoint : public Error {
 public:
  using Error::Error;
};

/// A documented size limit would be exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// Input violates an operation's precondition (argument count, order range, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// decompose found a remainder outside the expected measure space.
class NotInMeasureSpace : public Error {
 public:
  using Error::Error;
};

/// No nonzero coderivative witness was found up to the requested order.
class NoWitness : public Error {
 public:
  using Error::Error;
};

/// Malformed JSON input or schema violation.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace hom
