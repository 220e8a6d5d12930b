#pragma once

#include <stdexcept>
#include <string>

namespace gtrig {

// Base of every error raised by the library. The CLI maps the concrete
// subclasses onto exit codes, so keep the hierarchy shallow.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

class InvalidInterval : public DomainError {
 public:
  using DomainError::DomainError;
};

class NoBracket : public DomainError {
 public:
  using DomainError::DomainError;
};

// Argument too close to a pole of tau or of the cosine derivative.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Pendulum quantity requested for the wrong motion regime.
class RegimeError : public DomainError {
 public:
  using DomainError::DomainError;
};

class NonConvergence : public Error {
 public:
  using Error::Error;
};

class StepFailure : public NonConvergence {
 public:
  using NonConvergence::NonConvergence;
};

}  // namespace gtrig
