#pragma once

#include <array>
#include <optional>
#include <vector>

#include "natanzon/ode.hpp"
#include "natanzon/potentials.hpp"

namespace natanzon {

/// General Natanzon potential
///   V = (v0 + v1 z + v2 z^2) / r(z) - {z, x} / 2,  r = r0 + r1 z + r2 z^2,
/// with z(x) from z' = z (1 - z) / sqrt(r) (hypergeometric mode) or
/// z' = z / sqrt(r) (confluent mode), z(x0) = z_start.
struct NatanzonSpec {
  std::array<double, 3> r{1.0, 0.0, 0.0};
  std::array<double, 3> v{0.0, 0.0, 0.0};
  bool confluent = false;
  double x0 = 0.0;
  double z_start = 0.5;
};

struct NatanzonProfile {
  std::vector<double> z;
  std::vector<double> V;
};

/// Integrates the map numerically and evaluates the potential at each grid
/// point. Throws DomainError if r(z) <= 0 is met, NumericalError on step
/// underflow.
NatanzonProfile natanzon_general(const NatanzonSpec& spec, const std::vector<double>& x_grid,
                                 const OdeOptions& opt = {});

/// rho = z'(x) as a function of z, and {z, x} from r, r', r''.
double natanzon_rho(const NatanzonSpec& spec, double z);
double natanzon_schwarzian(const NatanzonSpec& spec, double z);
double natanzon_potential_z(const NatanzonSpec& spec, double z);

/// When r(z) = c z^a (1-z)^b with c > 0 and a, b, a + b drawn from the six
/// hypergeometric (or three confluent) discrete forms, the catalog potential
/// with the same z(x) and V(x). Empty for any other r.
std::optional<PotentialSpec> catalog_equivalent(const NatanzonSpec& spec);

}  // namespace natanzon
