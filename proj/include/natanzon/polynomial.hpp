#pragma once

#include <vector>

namespace natanzon {

/// Real polynomial, coefficients in ascending powers.
using Poly = std::vector<double>;

double poly_eval(const Poly& p, double z);
/// Value and first two derivatives, by Horner.
void poly_eval_d2(const Poly& p, double z, double& v, double& d1, double& d2);

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, double s);
Poly poly_derivative(const Poly& a);

/// (z - a)^n.
Poly poly_binomial(double a, int n);

/// p(a + b z).
Poly poly_compose_affine(const Poly& p, double a, double b);

/// Quotient of p by (z - a); the remainder p(a) is returned through rem.
Poly poly_deflate(const Poly& p, double a, double& rem);

/// Drops trailing zero coefficients (exact zeros only).
void poly_trim(Poly& p);

}  // namespace natanzon
