#include "natanzon/hypergeometric.hpp"

#include <cmath>
#include <limits>

#include "natanzon/errors.hpp"

namespace natanzon {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxTerms = 20000;

bool nonpositive_integer(double c) { return c <= 0.0 && c == std::floor(c); }

struct Sum {
  double value;
  double err;
};

// sum_n (a)_n (b)_n / ((c)_n n!) z^n, or without b when has_b is false.
Sum pfq_series(double a, double b, bool has_b, double c, double z) {
  double term = 1.0, sum = 1.0, abs_sum = 1.0;
  for (int n = 0; n < kMaxTerms; ++n) {
    term *= (a + n) * (has_b ? (b + n) : 1.0) / ((c + n) * (n + 1)) * z;
    sum += term;
    abs_sum += std::abs(term);
    if (term == 0.0) return {sum, kEps * abs_sum};
    if (n > 2 && std::abs(term) <= 0.5 * kEps * std::abs(sum)) {
      return {sum, std::abs(term) + kEps * abs_sum};
    }
  }
  throw NumericalError("hypergeometric series did not converge");
}

Sum f21_series(double a, double b, double c, double z) { return pfq_series(a, b, true, c, z); }

// 2F1 on 1/2 < z < 1 through the connection formula in 1 - z.
Sum f21_near_one(double a, double b, double c, double z) {
  const double s = c - a - b;
  if (s == std::round(s)) {
    // Integer c - a - b makes the gamma prefactors singular; the plain series
    // still converges here, only slowly.
    return f21_series(a, b, c, z);
  }
  const double w = 1.0 - z;
  const double A = std::tgamma(c) * std::tgamma(s) / (std::tgamma(c - a) * std::tgamma(c - b));
  const double B = std::tgamma(c) * std::tgamma(-s) / (std::tgamma(a) * std::tgamma(b));
  const Sum f1 = f21_series(a, b, 1.0 - s, w);
  const Sum f2 = f21_series(c - a, c - b, 1.0 + s, w);
  const double p = std::pow(w, s);
  const double t1 = std::isfinite(A) ? A * f1.value : 0.0;
  const double t2 = std::isfinite(B) ? B * p * f2.value : 0.0;
  const double v = t1 + t2;
  return {v, std::abs(A) * f1.err + std::abs(B * p) * f2.err + 1e3 * kEps * (std::abs(t1) + std::abs(t2))};
}

Sum f21_value(double a, double b, double c, double z) {
  if (z >= 1.0) throw DomainError("gauss_2f1: z >= 1 is outside the real series domain");
  if (std::abs(z) <= 0.5) return f21_series(a, b, c, z);
  if (z < -0.5) {
    // Pfaff: (1-z)^-a 2F1(a, c-b; c; z/(z-1)).
    const double w = z / (z - 1.0);
    const Sum s = w <= 0.5 ? f21_series(a, c - b, c, w) : f21_near_one(a, c - b, c, w);
    const double p = std::pow(1.0 - z, -a);
    return {p * s.value, std::abs(p) * s.err};
  }
  return f21_near_one(a, b, c, z);
}

}  // namespace

FnValue kummer_m(double a, double b, double z) {
  if (nonpositive_integer(b)) throw DomainError("kummer_m: b must not be a nonpositive integer");
  auto eval = [](double a_, double b_, double z_) -> Sum {
    if (z_ < 0.0) {
      // Kummer transformation avoids alternating-series cancellation.
      const Sum s = pfq_series(b_ - a_, 0.0, false, b_, -z_);
      const double e = std::exp(z_);
      return {e * s.value, e * s.err};
    }
    return pfq_series(a_, 0.0, false, b_, z_);
  };
  const Sum m = eval(a, b, z);
  const Sum d = eval(a + 1.0, b + 1.0, z);
  return {m.value, a / b * d.value, m.err};
}

FnValue gauss_2f1(double a, double b, double c, double z) {
  if (nonpositive_integer(c)) throw DomainError("gauss_2f1: c must not be a nonpositive integer");
  const Sum f = f21_value(a, b, c, z);
  const Sum d = f21_value(a + 1.0, b + 1.0, c + 1.0, z);
  return {f.value, a * b / c * d.value, f.err};
}

}  // namespace natanzon
