#pragma once

#include <vector>

#include "natanzon/hypergeometric.hpp"
#include "natanzon/polynomial.hpp"

namespace natanzon {

/// Linear ODE P2(z) u'' + P1(z) u' + P0(z) u = 0 with polynomial coefficients.
struct PolyOde {
  Poly p2;
  Poly p1;
  Poly p0;

  /// The same equation with coefficients re-expanded about z0 (t = z - z0).
  PolyOde shifted(double z0) const;
};

/// u = (z - z0)^rho sum_n c_n (z - z0)^n.
struct LocalSeries {
  double z0 = 0.0;
  double rho = 0.0;
  std::vector<double> c;

  /// Sums the series at z; est_error is the size of the last retained terms.
  FnValue eval(double z) const;
};

/// Exponents at z0 from the indicial equation; empty when z0 is an ordinary
/// point, one or two roots at a regular singular point. Throws
/// SingularPointError for an irregular singular point.
std::vector<double> indicial_exponents(const PolyOde& ode, double z0);

/// Local series solution with nterms coefficients.
///   ordinary point:         c0, c1 given (rho ignored).
///   regular singular point: c0 given, rho an indicial exponent; throws
///                           DomainError when the recurrence hits a zero
///                           divisor (exponents differing by an integer).
LocalSeries local_series(const PolyOde& ode, double z0, double rho, double c0, double c1,
                         int nterms);

/// Number of terms so that a series with radius of convergence R reaches
/// double precision at distance d.
int series_terms_for(double d, double R);

}  // namespace natanzon
