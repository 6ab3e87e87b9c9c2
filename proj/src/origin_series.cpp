#include "natanzon/origin_series.hpp"

#include <cmath>
#include <cstdlib>

#include "natanzon/errors.hpp"

namespace natanzon {

Series series_mul(const Series& a, const Series& b) {
  const std::size_t n = std::min(a.size(), b.size());
  Series r(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; i + j < n; ++j) r[i + j] += a[i] * b[j];
  return r;
}

Series series_inv(const Series& a) {
  if (a.empty() || a[0] == 0.0) throw NumericalError("series_inv: zero constant term");
  Series r(a.size(), 0.0);
  r[0] = 1.0 / a[0];
  for (std::size_t k = 1; k < a.size(); ++k) {
    double s = 0.0;
    for (std::size_t j = 1; j <= k; ++j) s += a[j] * r[k - j];
    r[k] = -s / a[0];
  }
  return r;
}

Series series_sqrt(const Series& a) {
  if (a.empty() || a[0] <= 0.0) throw NumericalError("series_sqrt: nonpositive constant term");
  Series r(a.size(), 0.0);
  r[0] = std::sqrt(a[0]);
  for (std::size_t k = 1; k < a.size(); ++k) {
    double s = a[k];
    for (std::size_t j = 1; j < k; ++j) s -= r[j] * r[k - j];
    r[k] = s / (2.0 * r[0]);
  }
  return r;
}

Series series_pow(const Series& a, int n) {
  Series base = n < 0 ? series_inv(a) : a;
  Series r(a.size(), 0.0);
  r[0] = 1.0;
  for (int i = 0; i < std::abs(n); ++i) r = series_mul(r, base);
  return r;
}

Series series_compose(const Series& g, const Series& f) {
  if (!f.empty() && f[0] != 0.0) throw NumericalError("series_compose: inner series has a constant term");
  const std::size_t n = f.size();
  Series r(n, 0.0);
  Series power(n, 0.0);
  power[0] = 1.0;
  for (std::size_t j = 0; j < g.size() && j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) r[k] += g[j] * power[k];
    power = series_mul(power, f);
  }
  return r;
}

Series series_reversion(const Series& g) {
  if (g.size() < 2 || g[0] != 0.0 || g[1] == 0.0)
    throw NumericalError("series_reversion: need g(0) = 0 and g'(0) != 0");
  Series f(g.size(), 0.0);
  f[1] = 1.0 / g[1];
  for (std::size_t k = 2; k < g.size(); ++k) {
    const Series gf = series_compose(g, f);
    f[k] = -gf[k] / g[1];
  }
  return f;
}

}  // namespace natanzon
