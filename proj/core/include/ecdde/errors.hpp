#ifndef ECDDE_ERRORS_HPP
#define ECDDE_ERRORS_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace ecdde {

using Complex = std::complex<double>;

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input: malformed parameter lists, non-monotone shifts, negative
/// tolerances, and the like.  CLI exit code 2.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A quadrature or iteration failed to reach the requested tolerance.
/// Carries the best estimate obtained so far.  CLI exit code 3.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& msg, Complex best, double est_error)
      : Error(msg), best_estimate(best), est_error(est_error) {}
  Complex best_estimate{};
  double est_error{};
};

/// Result magnitude exceeds the double exponent range; carries a saturated
/// stand-in value.  CLI exit code 3.
class OverflowError : public Error {
 public:
  OverflowError(const std::string& msg, Complex saturated)
      : Error(msg), saturated(saturated) {}
  Complex saturated{};
};

/// The requested operation is outside the domain where the underlying
/// representation or formula is valid.  CLI exit code 4.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Wrong representation for these parameters; the message names the
/// representation that applies instead.
class RepresentationError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Gamma evaluated at a non-positive integer; carries the integer hit.
class PoleError : public DomainError {
 public:
  PoleError(const std::string& msg, long long pole)
      : DomainError(msg), pole(pole) {}
  long long pole{};
};

/// A solution object does not extend far enough; carries the horizon that
/// would be required.
class HorizonError : public DomainError {
 public:
  HorizonError(const std::string& msg, double required)
      : DomainError(msg), required(required) {}
  double required{};
};

/// Normalization by Gamma(-beta) is impossible (beta a non-negative integer).
class NormalizationError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace ecdde

#endif  // ECDDE_ERRORS_HPP
