#include "natanzon/lambert.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "natanzon/errors.hpp"

namespace natanzon {

namespace {

constexpr double kInvE = 0.36787944117144232159552377016146;  // 1/e
constexpr int kMaxHalley = 64;

// Branch-point expansion W = -1 + p - p^2/3 + 11/72 p^3 - ..., p = +-sqrt(2(e y + 1)).
// Returns W + 1 so that callers can keep the small quantity exact.
double branch_series_plus_one(double p) {
  static constexpr double c[] = {
      1.0,
      -1.0 / 3.0,
      11.0 / 72.0,
      -43.0 / 540.0,
      769.0 / 17280.0,
      -221.0 / 8505.0,
      680863.0 / 43545600.0,
      -1963.0 / 204120.0,
      226287557.0 / 37623398400.0,
  };
  double sum = 0.0;
  for (int k = 8; k >= 0; --k) sum = sum * p + c[k];
  return sum * p;
}

double halley(double w, double y) {
  for (int i = 0; i < kMaxHalley; ++i) {
    const double ew = std::exp(w);
    const double f = w * ew - y;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) break;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    const double step = f / denom;
    w -= step;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(w))) break;
  }
  return w;
}

void check_branch_point(double y) {
  if (!(y >= -kInvE) && -kInvE - y > 4.0 * std::numeric_limits<double>::epsilon()) {
    throw DomainError("Lambert W: argument " + std::to_string(y) + " is below the branch point -1/e");
  }
}

}  // namespace

double lambert_w0_plus_one(double delta) {
  if (!(delta >= 0.0)) throw DomainError("Lambert W: negative branch-point offset");
  const double p = std::sqrt(2.0 * delta);
  if (p < 0.03) return branch_series_plus_one(p);
  const double y = (delta - 1.0) * kInvE;
  return lambert_w0(y) + 1.0;
}

double lambert_w0(double y) {
  if (std::isnan(y)) return y;
  check_branch_point(y);
  if (y == 0.0) return 0.0;
  if (std::isinf(y)) return y;
  const double delta = std::max(0.0, std::numbers::e * y + 1.0);
  const double p = std::sqrt(2.0 * delta);
  if (p < 1e-3) return branch_series_plus_one(p) - 1.0;

  double w;
  if (y < -0.25) {
    w = branch_series_plus_one(p) - 1.0;
  } else if (std::abs(y) < 0.25) {
    w = y * (1.0 + y * (-1.0 + y * (1.5 - 8.0 / 3.0 * y)));
  } else if (y < 3.0) {
    const double l = std::log1p(y);
    w = l * (1.0 - std::log1p(l) / (2.0 + l));
  } else {
    const double l1 = std::log(y);
    const double l2 = std::log(l1);
    w = l1 - l2 + l2 / l1;
  }
  return halley(w, y);
}

double lambert_wm1(double y) {
  if (std::isnan(y)) return y;
  check_branch_point(y);
  if (!(y < 0.0)) throw DomainError("Lambert W-1: argument must be negative");
  const double delta = std::max(0.0, std::numbers::e * y + 1.0);
  const double p = -std::sqrt(2.0 * delta);
  if (-p < 1e-3) return branch_series_plus_one(p) - 1.0;

  double w;
  if (y < -0.25) {
    w = branch_series_plus_one(p) - 1.0;
  } else {
    const double l1 = std::log(-y);
    const double l2 = std::log(-l1);
    w = l1 - l2 + l2 / l1;
  }
  return halley(w, y);
}

}  // namespace natanzon
