#pragma once

#include <stdexcept>
#include <string>

namespace bo2d {

/// Base of every error raised by the library. The CLI maps subclasses onto
/// distinct exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Violated precondition on user-supplied values (sizes, parameters).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Two operands live on different grids.
class GridMismatch : public Error {
 public:
  using Error::Error;
};

/// Data outside X^s (non-zero x-mean) where the operator requires it.
class XsViolation : public Error {
 public:
  using Error::Error;
};

class BlowUp : public Error {
 public:
  BlowUp(const std::string& what, double time) : Error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// Pullback profiles fail to settle (no scattering state detected).
class NoScattering : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace bo2d
