#pragma once

#include <stdexcept>
#include <string>

namespace dbubble {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input: violated precondition, malformed geometry, unknown option.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A point handed to a polar map lies outside the map's domain.
class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A computation on valid input failed to reach its tolerance.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Integrand r^p with p < 0 evaluated on a curve through the origin.
class IntegrabilityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// The origin is a singular point of the density.
class SingularityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NonTerminationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class BracketError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ConstructionError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Green-identity area of a self-intersecting loop has no region meaning.
class UndefinedResultError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace dbubble
