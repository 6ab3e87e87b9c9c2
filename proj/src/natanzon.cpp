#include "natanzon/natanzon.hpp"

#include <cmath>
#include <sstream>

#include "natanzon/errors.hpp"
#include "natanzon/polynomial.hpp"

namespace natanzon {

namespace {

Poly r_poly(const NatanzonSpec& s) { return {s.r[0], s.r[1], s.r[2]}; }

double checked_r(const NatanzonSpec& s, double z) {
  const double r = poly_eval(r_poly(s), z);
  if (!(r > 0.0)) {
    std::ostringstream os;
    os << "r(z) = " << r << " <= 0 at z = " << z << "; the map is not real there";
    throw DomainError(os.str());
  }
  return r;
}

// g(z) in rho = g / sqrt(r), with derivatives.
void g_terms(const NatanzonSpec& s, double z, double& g, double& g1, double& g2) {
  if (s.confluent) {
    g = z;
    g1 = 1.0;
    g2 = 0.0;
  } else {
    g = z * (1.0 - z);
    g1 = 1.0 - 2.0 * z;
    g2 = -2.0;
  }
}

// Exponents (a, b) and scale c with r = c z^a (1-z)^b, if r has that shape.
struct DiscreteR {
  int a;
  int b;
  double c;
};

std::optional<DiscreteR> match_discrete(const NatanzonSpec& s) {
  const double r0 = s.r[0], r1 = s.r[1], r2 = s.r[2];
  const double scale = std::abs(r0) + std::abs(r1) + std::abs(r2);
  const double tol = 1e-14 * scale;
  auto zero = [&](double x) { return std::abs(x) <= tol; };
  auto near = [&](double x, double y) { return std::abs(x - y) <= tol; };
  if (r0 > 0 && zero(r1) && zero(r2)) return DiscreteR{0, 0, r0};
  if (r0 > 0 && near(r1, -2.0 * r0) && near(r2, r0)) return DiscreteR{0, 2, r0};
  if (zero(r0) && zero(r1) && r2 > 0) return DiscreteR{2, 0, r2};
  if (zero(r0) && r1 > 0 && zero(r2)) return DiscreteR{1, 0, r1};
  if (r0 > 0 && near(r1, -r0) && zero(r2)) return DiscreteR{0, 1, r0};
  if (zero(r0) && r1 > 0 && near(r2, -r1)) return DiscreteR{1, 1, r1};
  return std::nullopt;
}

}  // namespace

double natanzon_rho(const NatanzonSpec& spec, double z) {
  double g, g1, g2;
  g_terms(spec, z, g, g1, g2);
  return g / std::sqrt(checked_r(spec, z));
}

double natanzon_schwarzian(const NatanzonSpec& spec, double z) {
  double g, g1, g2, r, r1, r2;
  g_terms(spec, z, g, g1, g2);
  poly_eval_d2(r_poly(spec), z, r, r1, r2);
  if (!(r > 0.0)) (void)checked_r(spec, z);
  const double w = 1.0 / std::sqrt(r);
  const double rho = g * w;
  const double rho1 = g1 * w - 0.5 * g * r1 * w / r;
  const double rho2 = g2 * w - g1 * r1 * w / r - 0.5 * g * r2 * w / r + 0.75 * g * r1 * r1 * w / (r * r);
  return rho * rho2 - 0.5 * rho1 * rho1;
}

double natanzon_potential_z(const NatanzonSpec& spec, double z) {
  const double r = checked_r(spec, z);
  const double num = spec.v[0] + z * (spec.v[1] + z * spec.v[2]);
  return num / r - 0.5 * natanzon_schwarzian(spec, z);
}

NatanzonProfile natanzon_general(const NatanzonSpec& spec, const std::vector<double>& x_grid,
                                 const OdeOptions& opt) {
  (void)checked_r(spec, spec.z_start);
  auto f = [&spec](double, double z) { return natanzon_rho(spec, z); };
  NatanzonProfile out;
  out.z = integrate_first_order(f, spec.x0, spec.z_start, x_grid, opt);
  out.V.reserve(out.z.size());
  for (double z : out.z) out.V.push_back(natanzon_potential_z(spec, z));
  return out;
}

std::optional<PotentialSpec> catalog_equivalent(const NatanzonSpec& spec) {
  const auto d = match_discrete(spec);
  if (!d) return std::nullopt;
  const double sc = std::sqrt(d->c);
  Poly v{spec.v[0], spec.v[1], spec.v[2]};

  if (spec.confluent) {
    if (d->b != 0) return std::nullopt;
    // z' = z^m1 / sqrt(c), m1 = 1 - a/2, catalog class (m1, 0).
    const HalfInt m1 = HalfInt::from_doubled(2 - d->a);
    const double m = m1.value();
    const ClassInfo info = class_info(EquationFamily::ConfluentHeun, {m1, HalfInt(0)});
    Poly inner = v;
    inner[0] -= 0.5 * (0.5 * m * m - m);
    Poly p = poly_scale(poly_mul(poly_binomial(1.0, 2), inner), 1.0 / d->c);
    Coeffs cv{};
    for (int k = 0; k < 5 && k < static_cast<int>(p.size()); ++k) cv[k] = p[k];
    PotentialSpec ps = PotentialSpec::from_polynomial(info, cv, sc, 0.0);
    ps = ps.with_branch(ZInterval{0.0, info.z_domain.hi, true, true});
    ps.x0 = spec.x0 - x_of_z(ps.map(), spec.z_start);
    return ps;
  }

  // z' = z^m1 (1-z)^m2 / sqrt(c), m1 = 1 - a/2, m2 = 1 - b/2.
  const HalfInt m1 = HalfInt::from_doubled(2 - d->a);
  const HalfInt m2 = HalfInt::from_doubled(2 - d->b);
  const double sigma = (m2.is_integer() && (m2.doubled() / 2) % 2 != 0) ? -sc : sc;
  const ClassInfo info = class_info(EquationFamily::ConfluentHeun, {m1, m2});
  const double a1 = m1.value(), a2 = m2.value();
  Poly q = poly_add(poly_add(poly_scale(poly_binomial(1.0, 2), 0.5 * a1 * a1 - a1),
                             poly_scale(Poly{0.0, 0.0, 1.0}, 0.5 * a2 * a2 - a2)),
                    poly_scale(Poly{0.0, -1.0, 1.0}, a1 * a2));
  const double sign = d->b % 2 == 0 ? 1.0 : -1.0;
  Poly p = poly_scale(poly_add(v, poly_scale(q, -0.5)), sign / d->c);
  Coeffs cv{};
  for (int k = 0; k < 5 && k < static_cast<int>(p.size()); ++k) cv[k] = p[k];
  PotentialSpec ps = PotentialSpec::from_polynomial(info, cv, sigma, 0.0);
  ps = ps.with_branch(ZInterval{0.0, 1.0, true, true});
  ps.x0 = spec.x0 - x_of_z(ps.map(), spec.z_start);
  return ps;
}

}  // namespace natanzon
