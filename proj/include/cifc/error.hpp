#pragma once

#include <stdexcept>
#include <string>

namespace cifc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

/// The generic 3-user scheme builder could not realize the sum-capacity bound.
/// Never expected; it means an unhandled corner case rather than a weak channel.
class SchemeSearchFailed : public Error {
 public:
  using Error::Error;
};

class PowerConstraintViolated : public Error {
 public:
  using Error::Error;
};

/// Observed additive gap exceeded the analytic guarantee (or inner > outer).
class GapExceeded : public Error {
 public:
  using Error::Error;
};

class NonPsdInput : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace cifc
