#pragma once

#include <stdexcept>
#include <string>

namespace natanzon {

/// Argument outside the domain where an operation is defined (z outside the
/// class interval, x outside the image of the map, y < -1/e for Lambert W...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Evaluation requested at (or continued through) a singular point of an ODE.
class SingularPointError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Exponent pair or family combination that is not in the catalog.
class CatalogError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Iterative method that failed to converge or bracket.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace natanzon
