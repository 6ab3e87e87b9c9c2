#pragma once

#include <array>
#include <optional>

#include "natanzon/catalog.hpp"
#include "natanzon/coordmap.hpp"

namespace natanzon {

using Coeffs = std::array<double, 5>;
using LabelMatrix = std::array<std::array<double, 5>, 5>;

/// One concrete potential of a catalog class, in units 2m/hbar^2 = 1.
///
/// v holds the polynomial coefficients of the internal form
///   confluent Heun:        V = z^(2m1-2) (z-1)^(2m2-2) P(z)
///   double-/bi-confluent:  V = z^(2m1-d) P(z), d = 4 / 2
///   tri-confluent:         V = P(z)
/// with P(z) = v0 + v1 z + ... + v4 z^4. The table labels (V0 + V1/z + ...,
/// or the x-forms for the one-singularity families) are reached through
/// from_table() and table().
struct PotentialSpec {
  ClassInfo info;
  Coeffs v{};
  double sigma = 1.0;
  double x0 = 0.0;
  ZInterval branch;

  static PotentialSpec from_polynomial(const ClassInfo& info, const Coeffs& v, double sigma, double x0);
  static PotentialSpec from_table(const ClassInfo& info, const Coeffs& table, double sigma, double x0);

  Coeffs table() const;
  MapSpec map() const;
  PotentialSpec with_branch(ZInterval b) const;
};

/// M with v = M * table for the class. Invertible for every Heun-family class.
LabelMatrix table_to_polynomial(const ClassInfo& info);
LabelMatrix polynomial_to_table(const ClassInfo& info);

/// Powers (a, b) of z and (z-1) multiplying P(z) in the internal form.
std::array<int, 2> prefactor_powers(const ClassInfo& info);

/// V at z. At a pole returns +-infinity (sign of the limit from inside the
/// branch); at a removable singular point returns the finite limit. Throws
/// DomainError for z outside the closed branch.
double eval_potential_z(const PotentialSpec& spec, double z);

/// eval_potential_z(spec, z_of_x(map, x)).
double eval_potential_x(const PotentialSpec& spec, double x);

/// V as an elementary function of t = (x - x0)/sigma written from the table
/// labels, for classes whose map inverts in closed form. Empty otherwise.
std::optional<double> explicit_x_form(const PotentialSpec& spec, double x);

/// The z <-> 1-z partner with V'(1 - z) = V(z) and the same table labels.
/// sigma is adjusted so that V'(x) = V(x) as well.
PotentialSpec mirror_relabel(const PotentialSpec& spec);

/// Large-x behaviour V ~ v_inf - amplitude exp(-rate (x - x0)) of class (1,-1).
struct TailInfo {
  double v_inf;
  double amplitude;
  double rate;
};

/// Requires class (1,-1), x0 = -sigma, sigma > 0.
TailInfo tail(const PotentialSpec& spec);

/// v_inf - V(x) for class (1,-1), computed without cancellation at large x.
double tail_deviation(const PotentialSpec& spec, double x);

/// Coefficients of x^-2, x^-3/2, x^-1, x^-1/2, x^0 in the small-x expansion
/// of class (1,-1) (x0 = -sigma, sigma > 0).
struct OriginExpansion {
  Coeffs d{};
  static constexpr std::array<double, 5> exponents{-2.0, -1.5, -1.0, -0.5, 0.0};
  double eval(double x) const;
};

OriginExpansion origin_expansion(const PotentialSpec& spec);

}  // namespace natanzon
