#pragma once

#include <stdexcept>
#include <string>

namespace qed {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input lies outside the domain where a formula or the model applies.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A time lies outside the guard band of the requested regime branch.
class RangeError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A numerical procedure (quadrature, root bracketing) failed to converge.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// The transform oracle's result changed by more than the allowed amount
/// under grid refinement.
class UnderResolvedGrid : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace qed
