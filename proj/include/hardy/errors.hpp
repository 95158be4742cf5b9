#pragma once

#include <stdexcept>
#include <string>

namespace hardy {

/// Base of every error raised by the library. Callers that only care about
/// "the input was rejected" can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain (n = 0, p < 1, sigma < 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Element does not conform to its space (wrong dimension or variant).
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Integer result does not fit the supported range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Request exceeds a configured memory or work budget.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Too few torus coordinates supplied for an evaluation.
class ArityError : public Error {
 public:
  using Error::Error;
};

/// A ratio whose denominator vanishes.
class UndefinedRatioError : public Error {
 public:
  using Error::Error;
};

/// Caller violated a documented precondition (e.g. |a_n| > 1).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed problem description. `path` is a JSON pointer into the input.
class ValidationError : public Error {
 public:
  ValidationError(std::string path, const std::string& what)
      : Error(path + ": " + what), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace hardy
