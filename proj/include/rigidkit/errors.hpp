#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rigidkit {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Input that violates a type invariant or cannot be parsed.
class DataError : public Error {
public:
  using Error::Error;
};

/// Input that is well formed but does not determine a unique answer.
class DegeneracyError : public Error {
public:
  using Error::Error;
};

class NotSkewSymmetric : public DataError {
public:
  using DataError::DataError;
};

class NotARotation : public DataError {
public:
  using DataError::DataError;
};

class NotUnitQuaternion : public DataError {
public:
  using DataError::DataError;
};

class UnsupportedConvention : public DataError {
public:
  using DataError::DataError;
};

class InvalidHomogeneousRow : public DataError {
public:
  using DataError::DataError;
};

class TooFewPoints : public DataError {
public:
  using DataError::DataError;
};

class TooFewPoses : public DataError {
public:
  using DataError::DataError;
};

class TooFewMotions : public DataError {
public:
  using DataError::DataError;
};

class SizeMismatch : public DataError {
public:
  using DataError::DataError;
};

class DegenerateMatrix : public DegeneracyError {
public:
  using DegeneracyError::DegeneracyError;
};

class DegenerateGeometry : public DegeneracyError {
public:
  using DegeneracyError::DegeneracyError;
};

class DegenerateMotion : public DegeneracyError {
public:
  using DegeneracyError::DegeneracyError;
};

/// Malformed line in a CSV input. `line()` is 1-based.
class ParseError : public DataError {
public:
  ParseError(std::size_t line, const std::string& reason)
      : DataError("line " + std::to_string(line) + ": " + reason), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// Quaternion on a pose line too far from unit norm to be silently repaired.
class NonUnitQuaternion : public ParseError {
public:
  NonUnitQuaternion(std::size_t line, double norm)
      : ParseError(line, "quaternion norm " + std::to_string(norm) + " deviates from 1 by more than 1e-3") {}
};

}  // namespace rigidkit
