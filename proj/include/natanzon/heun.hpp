#pragma once

#include <vector>

#include "natanzon/catalog.hpp"
#include "natanzon/hypergeometric.hpp"
#include "natanzon/taylor.hpp"

namespace natanzon {

/// Parameters of the unified five-parameter canonical forms
///   CHE: u'' + (g/z + d/(z-1) + e) u' + (a z - q)/(z(z-1)) u = 0
///   DHE: u'' + (g/z^2 + d/z + e) u' + (a z - q)/z^2 u = 0
///   BHE: u'' + (g/z + d + e z) u' + (a z - q)/z u = 0
///   THE: u'' + (g + d z + e z^2) u' + (a z - q) u = 0
/// with (g, d, e, a, q) = (gamma, delta, epsilon, alpha, q).
struct HeunParams {
  double gamma = 0.0;
  double delta = 0.0;
  double epsilon = 0.0;
  double alpha = 0.0;
  double q = 0.0;
};

/// The canonical form multiplied through by its singular denominator.
PolyOde heun_ode(EquationFamily family, const HeunParams& p);

/// f(z), f'(z) and g(z) of u'' + f u' + g u = 0.
struct HeunCoefficients {
  double f;
  double df;
  double g;
};
HeunCoefficients heun_coefficients(EquationFamily family, const HeunParams& p, double z);

/// Confluent Heun function Hc(gamma, delta, epsilon; alpha, q; z), the
/// Frobenius solution at z = 0 with Hc(0) = 1 and Hc'(0) = -q/gamma.
/// Power series for |z| <= 1/2, adaptive integration seeded from the series
/// elsewhere on z < 1. Throws DomainError for gamma = 0, -1, -2, ... and
/// SingularPointError for z >= 1.
FnValue heun_c(const HeunParams& p, double z);
std::vector<FnValue> heun_c(const HeunParams& p, const std::vector<double>& zs);

/// Solution regular at z = 1: Hc(delta, gamma, -epsilon; -alpha, q - alpha; 1 - z),
/// defined for z > 0. Derivatives are with respect to z.
std::vector<FnValue> heun_c_at_one(const HeunParams& p, const std::vector<double>& zs);

/// Solution of the family's canonical equation with u(z_ref) = u0 and
/// u'(z_ref) = du0, integrated to each z (none of which may be separated
/// from z_ref by a singular point).
std::vector<FnValue> heun_local_solution(EquationFamily family, const HeunParams& p, double z_ref,
                                         double u0, double du0, const std::vector<double>& zs);

/// max over interior grid points of |u'' + f u' + g u| / (|u''| + |f u'| + |g u|),
/// with u'' from a five-point Hermite stencil on the values and derivatives.
/// zs must be equally spaced and avoid the family's finite singular points.
double ode_residual(EquationFamily family, const HeunParams& p, const std::vector<double>& zs,
                    const std::vector<FnValue>& u);

}  // namespace natanzon
