#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace partrans {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed configuration or data document.
class ParseError : public Error {
 public:
  ParseError(std::string field, const std::string& message)
      : Error(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class UnknownName : public Error {
 public:
  explicit UnknownName(const std::string& what_kind, const std::string& name)
      : Error("unknown " + what_kind + " '" + name + "'"), name_(name) {}

  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class NotInvertible : public Error {
 public:
  explicit NotInvertible(mpz_class det)
      : Error("matrix I + rM is not invertible over the integers (det = " + det.get_str() + ")"),
        det_(std::move(det)) {}

  const mpz_class& determinant() const { return det_; }

 private:
  mpz_class det_;
};

/// An enumeration would exceed the configured cap.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

class NotGeneric : public Error {
 public:
  using Error::Error;
};

class HeckeOutOfRange : public Error {
 public:
  HeckeOutOfRange(const std::string& point, long multiplicity, int rank)
      : Error("Hecke multiplicity " + std::to_string(multiplicity) + " at '" + point +
              "' outside [0, " + std::to_string(rank - 1) + "]") {}
};

/// Weight vectors that are not strictly increasing or span a unit interval.
class InvalidWeights : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class DegreeMismatch : public Error {
 public:
  using Error::Error;
};

/// Expression syntax error; position is a byte offset into the source text.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& message)
      : Error("syntax error at position " + std::to_string(position) + ": " + message),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace partrans
