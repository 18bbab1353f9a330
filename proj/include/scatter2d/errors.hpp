#pragma once

#include <stdexcept>
#include <string>

namespace scatter2d {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// l^2 + 2m*lambda <= 0: the effective Bessel order would be imaginary.
class FallToCenterError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Running coupling evaluated at its pole a = a0 * exp(-gamma).
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Vanishing matching denominator: |tan delta| is infinite.
class ResonanceError : public Error {
 public:
  using Error::Error;
};

/// Quadrature or sequence extrapolation did not reach its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Ill-conditioned asymptotic fit (fit radii too close modulo pi/k).
class ConditioningError : public Error {
 public:
  using Error::Error;
};

/// Radial integration step too coarse for the requested accuracy.
class AccuracyError : public Error {
 public:
  using Error::Error;
};

}  // namespace scatter2d
