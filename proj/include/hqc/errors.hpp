#pragma once

#include <stdexcept>
#include <string>

namespace hqc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied argument is outside the operation's domain.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// An input object violates an invariant it is required to satisfy.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An integrator or other numerical routine drifted beyond its tolerance.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A root finder or eigen-solver failed to locate what it was asked for.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// A physical validity condition of a model is not met.
class ValidityError : public Error {
 public:
  using Error::Error;
};

}  // namespace hqc
