#include "natanzon/heun.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "natanzon/errors.hpp"
#include "natanzon/ode.hpp"

namespace natanzon {

namespace {

constexpr double kSeriesRadius = 0.5;
constexpr double kOdeTol = 1e-14;

void require_heun(EquationFamily family) {
  if (!is_heun_family(family)) throw CatalogError("not a Heun-type family");
}

bool is_singular(EquationFamily family, double z) {
  switch (family) {
    case EquationFamily::ConfluentHeun: return z == 0.0 || z == 1.0;
    case EquationFamily::DoubleConfluentHeun:
    case EquationFamily::BiConfluentHeun: return z == 0.0;
    default: return false;
  }
}

}  // namespace

PolyOde heun_ode(EquationFamily family, const HeunParams& p) {
  require_heun(family);
  const Poly p0{-p.q, p.alpha};
  switch (family) {
    case EquationFamily::ConfluentHeun:
      return {{0.0, -1.0, 1.0}, {-p.gamma, p.gamma + p.delta - p.epsilon, p.epsilon}, p0};
    case EquationFamily::DoubleConfluentHeun:
      return {{0.0, 0.0, 1.0}, {p.gamma, p.delta, p.epsilon}, p0};
    case EquationFamily::BiConfluentHeun:
      return {{0.0, 1.0}, {p.gamma, p.delta, p.epsilon}, p0};
    default:
      return {{1.0}, {p.gamma, p.delta, p.epsilon}, p0};
  }
}

HeunCoefficients heun_coefficients(EquationFamily family, const HeunParams& p, double z) {
  require_heun(family);
  const double lin = p.alpha * z - p.q;
  switch (family) {
    case EquationFamily::ConfluentHeun: {
      const double w = z - 1.0;
      return {p.gamma / z + p.delta / w + p.epsilon, -p.gamma / (z * z) - p.delta / (w * w),
              lin / (z * w)};
    }
    case EquationFamily::DoubleConfluentHeun:
      return {p.gamma / (z * z) + p.delta / z + p.epsilon,
              -2.0 * p.gamma / (z * z * z) - p.delta / (z * z), lin / (z * z)};
    case EquationFamily::BiConfluentHeun:
      return {p.gamma / z + p.delta + p.epsilon * z, -p.gamma / (z * z) + p.epsilon, lin / z};
    default:
      return {p.gamma + z * (p.delta + z * p.epsilon), p.delta + 2.0 * z * p.epsilon, lin};
  }
}

std::vector<FnValue> heun_c(const HeunParams& p, const std::vector<double>& zs) {
  if (p.gamma <= 0.0 && p.gamma == std::floor(p.gamma)) {
    std::ostringstream os;
    os << "heun_c: gamma = " << p.gamma << " is a nonpositive integer; the normalized solution does not exist";
    throw DomainError(os.str());
  }
  for (double z : zs)
    if (z >= 1.0) {
      std::ostringstream os;
      os << "heun_c: z = " << z << " at or beyond the singular point z = 1";
      throw SingularPointError(os.str());
    }

  const PolyOde ode = heun_ode(EquationFamily::ConfluentHeun, p);
  const LocalSeries series =
      local_series(ode, 0.0, 0.0, 1.0, 0.0, series_terms_for(kSeriesRadius, 1.0));

  std::vector<FnValue> out(zs.size());
  std::vector<double> left, right;
  std::vector<std::size_t> left_i, right_i;
  for (std::size_t i = 0; i < zs.size(); ++i) {
    const double z = zs[i];
    if (std::abs(z) <= kSeriesRadius) {
      out[i] = series.eval(z);
    } else if (z > 0) {
      right.push_back(z);
      right_i.push_back(i);
    } else {
      left.push_back(z);
      left_i.push_back(i);
    }
  }
  auto accel = [&p](double z, double u, double du) {
    const HeunCoefficients c = heun_coefficients(EquationFamily::ConfluentHeun, p, z);
    return -c.f * du - c.g * u;
  };
  auto continue_from = [&](double seed, const std::vector<double>& pts,
                           const std::vector<std::size_t>& idx) {
    if (pts.empty()) return;
    const FnValue s = series.eval(seed);
    const auto states = integrate_second_order(accel, seed, {s.value, s.derivative}, pts,
                                               {kOdeTol, kOdeTol, 1e-3});
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const double scale = std::abs(states[k].u) + std::abs(s.value);
      out[idx[k]] = {states[k].u, states[k].du, s.est_error + 1e2 * kOdeTol * scale};
    }
  };
  continue_from(kSeriesRadius, right, right_i);
  continue_from(-kSeriesRadius, left, left_i);
  return out;
}

FnValue heun_c(const HeunParams& p, double z) { return heun_c(p, std::vector<double>{z})[0]; }

std::vector<FnValue> heun_c_at_one(const HeunParams& p, const std::vector<double>& zs) {
  const HeunParams r{p.delta, p.gamma, -p.epsilon, -p.alpha, p.q - p.alpha};
  std::vector<double> ws(zs.size());
  for (std::size_t i = 0; i < zs.size(); ++i) {
    if (zs[i] <= 0.0) throw SingularPointError("heun_c_at_one: z <= 0 lies beyond the singular point z = 0");
    ws[i] = 1.0 - zs[i];
  }
  std::vector<FnValue> out = heun_c(r, ws);
  for (FnValue& v : out) v.derivative = -v.derivative;
  return out;
}

std::vector<FnValue> heun_local_solution(EquationFamily family, const HeunParams& p, double z_ref,
                                         double u0, double du0, const std::vector<double>& zs) {
  require_heun(family);
  if (is_singular(family, z_ref)) throw SingularPointError("reference point is a singular point");
  auto crosses = [&](double s) {
    for (double z : zs)
      if ((z - s) * (z_ref - s) <= 0.0) return true;
    return false;
  };
  if (family == EquationFamily::ConfluentHeun && (crosses(0.0) || crosses(1.0)))
    throw SingularPointError("grid is separated from the reference point by a singular point");
  if ((family == EquationFamily::DoubleConfluentHeun || family == EquationFamily::BiConfluentHeun) &&
      crosses(0.0))
    throw SingularPointError("grid is separated from the reference point by z = 0");
  auto accel = [&](double z, double u, double du) {
    const HeunCoefficients c = heun_coefficients(family, p, z);
    return -c.f * du - c.g * u;
  };
  const auto states = integrate_second_order(accel, z_ref, {u0, du0}, zs, {kOdeTol, kOdeTol, 1e-3});
  std::vector<FnValue> out(zs.size());
  for (std::size_t i = 0; i < zs.size(); ++i)
    out[i] = {states[i].u, states[i].du, 1e2 * kOdeTol * (std::abs(states[i].u) + std::abs(u0))};
  return out;
}

double ode_residual(EquationFamily family, const HeunParams& p, const std::vector<double>& zs,
                    const std::vector<FnValue>& u) {
  if (zs.size() != u.size()) throw DomainError("ode_residual: grid and values differ in length");
  if (zs.size() < 5) throw DomainError("ode_residual: need at least five grid points");
  const double h = zs[1] - zs[0];
  for (std::size_t i = 1; i < zs.size(); ++i)
    if (std::abs((zs[i] - zs[i - 1]) - h) > 1e-9 * std::abs(h))
      throw DomainError("ode_residual: grid must be equally spaced");
  for (double z : zs)
    if (is_singular(family, z)) throw SingularPointError("ode_residual: grid touches a singular point");

  double worst = 0.0;
  for (std::size_t i = 2; i + 2 < zs.size(); ++i) {
    const double u0 = u[i].value;
    const double d2 = (64.0 / 27.0 * (u[i + 1].value + u[i - 1].value - 2.0 * u0) +
                       7.0 / 54.0 * (u[i + 2].value + u[i - 2].value - 2.0 * u0)) /
                          (h * h) +
                      (-8.0 / 9.0 * (u[i + 1].derivative - u[i - 1].derivative) -
                       1.0 / 36.0 * (u[i + 2].derivative - u[i - 2].derivative)) /
                          h;
    const HeunCoefficients c = heun_coefficients(family, p, zs[i]);
    const double a = d2, b = c.f * u[i].derivative, g = c.g * u0;
    const double scale = std::abs(a) + std::abs(b) + std::abs(g) + 1e-300;
    worst = std::max(worst, std::abs(a + b + g) / scale);
  }
  return worst;
}

}  // namespace natanzon
