#include "natanzon/coordmap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "natanzon/errors.hpp"
#include "natanzon/lambert.hpp"

namespace natanzon {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// How a MapSpec is evaluated: through a confluent Heun representative
// (m1 >= m2), possibly in the reflected variable u = 1 - z.
struct Resolved {
  int singularities = 2;
  int a = 0;  // doubled m1 of the representative
  int b = 0;  // doubled m2 of the representative
  bool reflect = false;
  bool unit = false;  // unit-interval antiderivative instead of the catalog one
  double sigma = 1.0;
  ZInterval branch;  // in the representative's variable
};

int integer_sign(HalfInt m) {
  if (!m.is_integer()) return 1;
  return (m.doubled() / 2) % 2 == 0 ? 1 : -1;
}

bool subset(const ZInterval& inner, const ZInterval& outer) {
  return inner.lo >= outer.lo && inner.hi <= outer.hi;
}

bool has_unit_formula(int a, int b) {
  return (a == 1 && b == -1) || (a == 1 && b == 1) || (a == 2 && b == -1) || (a == 2 && b == 1);
}

std::string describe(const MapSpec& map) {
  std::ostringstream os;
  os << to_string(map.family) << " " << map.exponents.str();
  return os.str();
}

Resolved resolve(const MapSpec& map) {
  Resolved r;
  r.singularities = finite_singularity_count(map.family);
  r.sigma = map.sigma;
  r.branch = map.branch;
  if (r.singularities != 2) {
    r.a = map.exponents.m1.doubled();
    return r;
  }
  const ExponentPair rep = canonical_pair(map.family, map.exponents);
  r.a = rep.m1.doubled();
  r.b = rep.m2.doubled();
  if (!(rep == map.exponents)) {
    r.reflect = true;
    r.branch = map.branch.reflected();
    r.sigma = -integer_sign(map.exponents.m1) * integer_sign(map.exponents.m2) * map.sigma;
  }
  const ZInterval canonical = class_info(EquationFamily::ConfluentHeun, rep).z_domain;
  if (subset(r.branch, canonical)) return r;
  if (r.a == r.b && !r.reflect && subset(map.branch.reflected(), canonical)) {
    r.reflect = true;
    r.branch = map.branch.reflected();
    r.sigma = -integer_sign(map.exponents.m1) * integer_sign(map.exponents.m2) * map.sigma;
    return r;
  }
  if (subset(r.branch, ZInterval{0.0, 1.0, true, true}) && has_unit_formula(r.a, r.b)) {
    r.unit = true;
    return r;
  }
  throw DomainError("no real closed-form map for class " + describe(map) + " on the requested branch");
}

// Antiderivative F(u) of the representative.
double antiderivative(const Resolved& r, double u) {
  if (r.singularities == 0) return u;
  if (r.singularities == 1) {
    if (r.a == 2) return std::log(u);
    const double e = 1.0 - r.a / 2.0;
    if (r.a == 0) return u;
    return std::pow(u, e) / e;
  }
  if (r.unit) {
    switch (r.a * 10 + r.b) {
      case 1 * 10 - 1: return std::sqrt(u * (1.0 - u)) + std::asin(std::sqrt(u));
      case 1 * 10 + 1: return 2.0 * std::asin(std::sqrt(u));
      case 2 * 10 - 1: return 2.0 * std::sqrt(1.0 - u) - 2.0 * std::atanh(std::sqrt(1.0 - u));
      case 2 * 10 + 1: return -2.0 * std::atanh(std::sqrt(1.0 - u));
      default: break;
    }
  }
  switch (r.a * 10 + r.b) {
    case 0: return u;
    case 1 * 10 - 1: return std::sqrt(u * (u - 1.0)) - std::asinh(std::sqrt(u - 1.0));
    case 1 * 10 + 0: return 2.0 * std::sqrt(u);
    case 1 * 10 + 1: return 2.0 * std::asinh(std::sqrt(u - 1.0));
    case 2 * 10 - 2: return u - std::log(u);
    case 2 * 10 - 1: return 2.0 * std::sqrt(u - 1.0) - 2.0 * std::atan(std::sqrt(u - 1.0));
    case 2 * 10 + 0: return std::log(u);
    case 2 * 10 + 1: return 2.0 * std::atan(std::sqrt(u - 1.0));
    case 2 * 10 + 2: return 2.0 * std::atanh(1.0 - 2.0 * u);
    default: break;
  }
  throw CatalogError("no antiderivative for doubled pair");
}

// F at a branch end, including limits at infinity.
double antiderivative_at_end(const Resolved& r, double u) {
  if (std::isfinite(u)) return antiderivative(r, u);
  if (r.singularities == 2 && !r.unit && r.a == 2 && r.b == 1 && u > 0) return std::numbers::pi;
  if (r.singularities == 1 && r.a > 2 && u > 0) return 0.0;
  return u > 0 ? kInf : -kInf;
}

struct TRange {
  double lo;
  double hi;
};

TRange t_range(const Resolved& r) {
  const double f_lo = antiderivative_at_end(r, r.branch.lo);
  const double f_hi = antiderivative_at_end(r, r.branch.hi);
  return f_lo <= f_hi ? TRange{f_lo, f_hi} : TRange{f_hi, f_lo};
}

// Bisection on the monotone antiderivative, run until the bracket cannot
// shrink any further in double precision.
double invert_numerically(const Resolved& r, double t) {
  double lo = r.branch.lo;
  double hi = r.branch.hi;
  if (std::isinf(hi)) {
    const double start = std::isfinite(lo) ? lo : 0.0;
    double step = 1.0;
    double probe = start + step;
    const double f_lo_end = antiderivative_at_end(r, lo);
    const bool increasing = antiderivative(r, probe) > f_lo_end;
    for (int i = 0; i < 2000; ++i) {
      const double f = antiderivative(r, probe);
      if (increasing ? f >= t : f <= t) break;
      step *= 2.0;
      probe = start + step;
      if (!std::isfinite(probe)) throw NumericalError("could not bracket inverse map");
    }
    hi = probe;
  }
  double f_lo = antiderivative_at_end(r, lo);
  const double f_hi = antiderivative_at_end(r, hi);
  const bool increasing = f_hi > f_lo;
  if (increasing ? (t < f_lo || t > f_hi) : (t > f_lo || t < f_hi)) {
    std::ostringstream os;
    os << "could not bracket inverse map: t=" << t << " outside [" << f_lo << ", " << f_hi
       << "] on z in [" << lo << ", " << hi << "]";
    throw NumericalError(os.str());
  }
  for (int i = 0; i < 4000; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f = antiderivative(r, mid);
    if ((f < t) == increasing) {
      lo = mid;
      f_lo = f;
    } else {
      hi = mid;
    }
  }
  const double e_lo = std::abs(f_lo - t);
  const double e_hi = std::abs(antiderivative(r, hi) - t);
  if (!std::isfinite(e_lo)) return hi;
  return e_lo <= e_hi ? lo : hi;
}

double invert(const Resolved& r, double t) {
  if (r.singularities == 0) return t;
  if (r.singularities == 1) {
    if (r.a == 2) return std::exp(t);
    if (r.a == 0) return t;
    const double e = 1.0 - r.a / 2.0;
    return std::pow(e * t, 1.0 / e);
  }
  if (r.unit) {
    switch (r.a * 10 + r.b) {
      case 1 * 10 + 1: {
        const double s = std::sin(0.5 * t);
        return s * s;
      }
      case 2 * 10 + 1: {
        const double c = std::cosh(0.5 * t);
        return 1.0 / (c * c);
      }
      default: return invert_numerically(r, t);
    }
  }
  switch (r.a * 10 + r.b) {
    case 0: return t;
    case 1 * 10 + 0: return 0.25 * t * t;
    case 1 * 10 + 1: {
      const double c = std::cosh(0.5 * t);
      return c * c;
    }
    case 2 * 10 - 2: {
      // z e^-z = e^-t on the principal branch; near z = 1 work with the
      // branch-point offset, elsewhere with W0 itself.
      const double delta = -std::expm1(1.0 - t);
      if (delta < 4.5e-4) return 1.0 - lambert_w0_plus_one(delta);
      return -lambert_w0(-std::exp(-t));
    }
    case 2 * 10 + 0: return std::exp(t);
    case 2 * 10 + 1: {
      const double tn = std::tan(0.5 * t);
      return 1.0 + tn * tn;
    }
    case 2 * 10 + 2: return 1.0 / (1.0 + std::exp(t));
    default: return invert_numerically(r, t);
  }
}

void require_in_branch(const MapSpec& map, double z, bool interior) {
  const bool ok = interior ? map.branch.in_interior(z) : map.branch.contains(z);
  if (!ok) {
    std::ostringstream os;
    os << "z = " << z << " outside the branch (" << map.branch.lo << ", " << map.branch.hi
       << ") of class " << describe(map);
    throw DomainError(os.str());
  }
}

}  // namespace

MapSpec MapSpec::make(EquationFamily family, ExponentPair exponents, double sigma, double x0) {
  return make(class_info(family, exponents), sigma, x0);
}

MapSpec MapSpec::make(const ClassInfo& info, double sigma, double x0) {
  if (sigma == 0.0 || !std::isfinite(sigma)) throw DomainError("sigma must be finite and nonzero");
  MapSpec m;
  m.family = info.family;
  m.exponents = info.exponents;
  m.sigma = sigma;
  m.x0 = x0;
  m.branch = info.z_domain;
  return m;
}

MapSpec MapSpec::with_branch(ZInterval b) const {
  MapSpec m = *this;
  m.branch = b;
  (void)resolve(m);
  return m;
}

double branch_power(double base, HalfInt m) {
  if (m.is_integer()) return std::pow(base, m.doubled() / 2);
  return std::pow(std::abs(base), m.value());
}

int rho_squared_sign(const MapSpec& map) {
  if (finite_singularity_count(map.family) == 0) return 1;
  double probe;
  const ZInterval& b = map.branch;
  if (std::isfinite(b.lo) && std::isfinite(b.hi)) probe = 0.5 * (b.lo + b.hi);
  else if (std::isfinite(b.lo)) probe = b.lo + 1.0;
  else if (std::isfinite(b.hi)) probe = b.hi - 1.0;
  else probe = 0.5;
  int s = 1;
  if (!map.exponents.m1.is_integer() && probe < 0) s = -s;
  if (finite_singularity_count(map.family) == 2 && !map.exponents.m2.is_integer() && probe - 1.0 < 0) s = -s;
  return s;
}

double x_of_z(const MapSpec& map, double z) {
  require_in_branch(map, z, false);
  const Resolved r = resolve(map);
  const double u = r.reflect ? 1.0 - z : z;
  return map.x0 + r.sigma * antiderivative(r, u);
}

XRange x_image(const MapSpec& map) {
  const Resolved r = resolve(map);
  const TRange t = t_range(r);
  const double a = map.x0 + r.sigma * t.lo;
  const double b = map.x0 + r.sigma * t.hi;
  return a <= b ? XRange{a, b} : XRange{b, a};
}

double z_of_x(const MapSpec& map, double x) {
  const Resolved r = resolve(map);
  double t = (x - map.x0) / r.sigma;
  const TRange tr = t_range(r);
  const double slack = 1e-13 * (1.0 + std::abs(t));
  if (!(t >= tr.lo - slack && t <= tr.hi + slack)) {
    std::ostringstream os;
    const XRange xr = x_image(map);
    os << "x = " << x << " outside the image [" << xr.lo << ", " << xr.hi << "] of class "
       << describe(map);
    throw DomainError(os.str());
  }
  t = std::clamp(t, tr.lo, tr.hi);
  const double u = invert(r, t);
  return r.reflect ? 1.0 - u : u;
}

double rho(const MapSpec& map, double z) {
  require_in_branch(map, z, true);
  const int n = finite_singularity_count(map.family);
  if (n == 0) return 1.0 / map.sigma;
  double p = branch_power(z, map.exponents.m1);
  if (n == 2) p *= branch_power(z - 1.0, map.exponents.m2);
  return p / map.sigma;
}

double rho_log_derivative(const MapSpec& map, double z) {
  const int n = finite_singularity_count(map.family);
  if (n == 0) return 0.0;
  double l = map.exponents.m1.doubled() != 0 ? map.exponents.m1.value() / z : 0.0;
  if (n == 2 && map.exponents.m2.doubled() != 0) l += map.exponents.m2.value() / (z - 1.0);
  return l;
}

double schwarzian(const MapSpec& map, double z) {
  const double r = rho(map, z);
  const int n = finite_singularity_count(map.family);
  if (n == 0) return 0.0;
  const double m1 = map.exponents.m1.value();
  const double m2 = n == 2 ? map.exponents.m2.value() : 0.0;
  const double l = rho_log_derivative(map, z);
  double dl = m1 != 0.0 ? -m1 / (z * z) : 0.0;
  if (m2 != 0.0) dl -= m2 / ((z - 1.0) * (z - 1.0));
  return r * r * (dl + 0.5 * l * l);
}

}  // namespace natanzon
