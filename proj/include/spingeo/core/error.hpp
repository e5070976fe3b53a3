#pragma once

#include <stdexcept>
#include <string>

namespace spingeo {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Precondition violated by an argument (bad grid, non-finite input, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Two fields that must share a grid do not.
class GridMismatch : public Error {
 public:
  using Error::Error;
};

/// Evolution produced non-finite values or violated its stepping guard.
class InstabilityError : public Error {
 public:
  using Error::Error;
};

/// No sign/role assignment reconciles the velocity forms.
class CalibrationFailure : public Error {
 public:
  using Error::Error;
};

/// Malformed or unknown configuration entry.
class ConfigError : public Error {
 public:
  using Error::Error;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw InvalidArgument(what);
}

}  // namespace spingeo
