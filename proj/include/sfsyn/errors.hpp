#pragma once

#include <stdexcept>
#include <string>

namespace sfsyn {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Operands over different state counts.
class DimensionError : public Error {
 public:
  using Error::Error;
};

class ArithmeticError : public Error {
 public:
  using Error::Error;
};

/// A semigroup or automaton lacks structure an operation relies on.
class StructureError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

class NotInImageError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace sfsyn
