#pragma once

namespace natanzon {

/// Function value, first derivative and a truncation estimate (not a bound).
struct FnValue {
  double value = 0.0;
  double derivative = 0.0;
  double est_error = 0.0;
};

/// Kummer M(a, b, z) = 1F1(a; b; z). Throws DomainError for b = 0, -1, -2, ...
FnValue kummer_m(double a, double b, double z);

/// Gauss 2F1(a, b; c; z) for real z < 1. Direct series for |z| <= 1/2,
/// Pfaff transform for z < -1/2 and the 1 - z connection formula for
/// 1/2 < z < 1. Throws DomainError for c = 0, -1, -2, ... and z >= 1.
FnValue gauss_2f1(double a, double b, double c, double z);

}  // namespace natanzon
