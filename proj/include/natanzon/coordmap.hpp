#pragma once

#include "natanzon/catalog.hpp"

namespace natanzon {

/// Coordinate map z(x) defined by z'(x) = z^m1 (z-1)^m2 / sigma on one real
/// branch interval of z. Half-integer powers are taken of |base| (a constant
/// phase absorbed into sigma); integer powers keep their sign.
struct MapSpec {
  EquationFamily family = EquationFamily::ConfluentHeun;
  ExponentPair exponents;
  double sigma = 1.0;
  double x0 = 0.0;
  /// z-interval the map lives on. Defaults to the catalog domain; the unit
  /// interval (0,1) is also supported for every confluent Heun class whose
  /// map is real there.
  ZInterval branch;

  static MapSpec make(EquationFamily family, ExponentPair exponents, double sigma, double x0);
  static MapSpec make(const ClassInfo& info, double sigma, double x0);
  /// Same map restricted to another branch interval; throws DomainError when
  /// no closed-form antiderivative is available there.
  MapSpec with_branch(ZInterval branch) const;
};

/// Image of the branch under x(z), as an ordered pair lo <= hi.
struct XRange {
  double lo;
  double hi;
};

/// x0 + sigma F(z), F the antiderivative of z^-m1 (z-1)^-m2 with zero
/// integration constant.
double x_of_z(const MapSpec& map, double z);

/// Inverse of x_of_z: closed form where elementary, Lambert W for (1,-1),
/// bracketed bisection for (1/2,-1/2) and (1,-1/2).
double z_of_x(const MapSpec& map, double x);

/// z'(x).
double rho(const MapSpec& map, double z);

/// d(log rho)/dz = m1/z + m2/(z-1).
double rho_log_derivative(const MapSpec& map, double z);

/// Schwarzian derivative {z, x} = rho rho_zz - rho_z^2 / 2.
double schwarzian(const MapSpec& map, double z);

XRange x_image(const MapSpec& map);

/// b^m for integer m, |b|^m for half-integer m.
double branch_power(double base, HalfInt m);

/// Sign s with rho^2 = s z^(2 m1) (z-1)^(2 m2) / sigma^2 on the branch
/// (-1 only when a half-integer power is taken of a negative base an odd
/// number of times).
int rho_squared_sign(const MapSpec& map);

}  // namespace natanzon
