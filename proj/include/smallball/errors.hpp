#pragma once

#include <stdexcept>
#include <string>

namespace smallball {

/// Base of every error raised by the library. The CLI maps subclasses onto
/// exit codes: usage/domain problems are 1, regime exhaustion is 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (r <= 0, u < 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed request: unknown names, empty grids, mismatched inputs.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Input failed a structural check (non-symmetric table, kernel not PSD,
/// non-monotone spectrum).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The request lies outside the small-deviation regime (r >= sum of
/// eigenvalues, no root of the slowly varying relation, ...).
class OutOfRegimeError : public Error {
 public:
  using Error::Error;
};

/// A finite truncation cannot satisfy the requested tail certificate.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// The requested accuracy is below what the chosen numerical route can deliver.
class PrecisionLimitError : public OutOfRegimeError {
 public:
  using OutOfRegimeError::OutOfRegimeError;
};

/// The counting function is not representable at this threshold.
class UnboundedCountError : public OutOfRegimeError {
 public:
  using OutOfRegimeError::OutOfRegimeError;
};

}  // namespace smallball
