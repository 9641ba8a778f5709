#pragma once

#include <stdexcept>
#include <string>

namespace lcb {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A field evaluated to a non-finite value.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inadmissible configuration (parameters, files, overrides).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside of its documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// [b h_xx + c h_xy](0) = 0 and h_xx(0) <= 0: no simple Lyapunov function exists.
class NotStabilizable : public Error {
 public:
  using Error::Error;
};

/// A quotient whose denominator fell below tolerance.
class SingularQuotient : public Error {
 public:
  using Error::Error;
};

/// gamma(0) = b(0)/c(0): the x-axis is characteristic.
class GbcViolation : public Error {
 public:
  using Error::Error;
};

class TraceEscape : public Error {
 public:
  using Error::Error;
};

class CharacteristicDegeneracy : public Error {
 public:
  using Error::Error;
};

class PositivityLoss : public Error {
 public:
  using Error::Error;
};

class OutOfDomain : public Error {
 public:
  using Error::Error;
};

class IntegrationBlowup : public Error {
 public:
  using Error::Error;
};

class InconclusiveScan : public Error {
 public:
  using Error::Error;
};

}  // namespace lcb
