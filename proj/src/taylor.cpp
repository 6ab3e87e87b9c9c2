#include "natanzon/taylor.hpp"

#include <cmath>
#include <limits>

#include "natanzon/errors.hpp"

namespace natanzon {

namespace {

double coef(const Poly& p, int k) { return k >= 0 && k < static_cast<int>(p.size()) ? p[k] : 0.0; }

}  // namespace

PolyOde PolyOde::shifted(double z0) const {
  return {poly_compose_affine(p2, z0, 1.0), poly_compose_affine(p1, z0, 1.0),
          poly_compose_affine(p0, z0, 1.0)};
}

std::vector<double> indicial_exponents(const PolyOde& ode, double z0) {
  const PolyOde s = ode.shifted(z0);
  if (coef(s.p2, 0) != 0.0) return {};
  const double a1 = coef(s.p2, 1);
  if (a1 == 0.0) throw SingularPointError("irregular singular point: no Frobenius expansion");
  // rho (rho - 1) a1 + rho b0 = 0 (p0 has no t^-1 part after division).
  const double b0 = coef(s.p1, 0);
  return {0.0, 1.0 - b0 / a1};
}

LocalSeries local_series(const PolyOde& ode, double z0, double rho, double c0, double c1, int nterms) {
  const PolyOde s = ode.shifted(z0);
  LocalSeries out;
  out.z0 = z0;
  out.c.assign(std::max(nterms, 2), 0.0);
  std::vector<double>& c = out.c;
  const int kmax = static_cast<int>(std::max({s.p2.size(), s.p1.size(), s.p0.size()}));

  if (coef(s.p2, 0) != 0.0) {
    out.rho = 0.0;
    c[0] = c0;
    c[1] = c1;
    // Coefficient of t^(N-2): sum_k p2_k c_{N-k}(N-k)(N-k-1) + p1_k c_{N-1-k}(N-1-k) + p0_k c_{N-2-k}.
    for (int N = 2; N < static_cast<int>(c.size()); ++N) {
      double acc = 0.0;
      for (int k = 0; k <= kmax; ++k) {
        if (k > 0 && N - k >= 0) acc += coef(s.p2, k) * c[N - k] * (N - k) * (N - k - 1);
        if (N - 1 - k >= 0) acc += coef(s.p1, k) * c[N - 1 - k] * (N - 1 - k);
        if (N - 2 - k >= 0) acc += coef(s.p0, k) * c[N - 2 - k];
      }
      c[N] = -acc / (coef(s.p2, 0) * N * (N - 1));
    }
    return out;
  }

  const double a1 = coef(s.p2, 1);
  if (a1 == 0.0) throw SingularPointError("irregular singular point: no Frobenius expansion");
  out.rho = rho;
  c[0] = c0;
  // Coefficient of t^(n+rho-1):
  //   c_n (n+rho)[(n+rho-1) a1 + b0]
  //   + sum_{k>=2} p2_k c_{n+1-k} (n+1-k+rho)(n-k+rho)
  //   + sum_{k>=1} p1_k c_{n-k} (n-k+rho) + sum_{k>=0} p0_k c_{n-1-k} = 0.
  const double b0 = coef(s.p1, 0);
  for (int n = 1; n < static_cast<int>(c.size()); ++n) {
    const double lead = (n + rho) * ((n + rho - 1.0) * a1 + b0);
    double acc = 0.0;
    for (int k = 0; k <= kmax; ++k) {
      if (k >= 2 && n + 1 - k >= 0) acc += coef(s.p2, k) * c[n + 1 - k] * (n + 1 - k + rho) * (n - k + rho);
      if (k >= 1 && n - k >= 0) acc += coef(s.p1, k) * c[n - k] * (n - k + rho);
      if (n - 1 - k >= 0) acc += coef(s.p0, k) * c[n - 1 - k];
    }
    if (lead == 0.0) {
      if (acc == 0.0) {
        c[n] = 0.0;
        continue;
      }
      throw DomainError("Frobenius recurrence degenerate: exponents differ by an integer");
    }
    c[n] = -acc / lead;
  }
  return out;
}

FnValue LocalSeries::eval(double z) const {
  const double t = z - z0;
  double v = 0.0, d = 0.0;
  for (std::size_t n = c.size(); n-- > 0;) {
    v = v * t + c[n];
    if (n > 0) d = d * t + n * c[n];
  }
  const std::size_t m = c.size();
  double tail = 0.0;
  if (m >= 2) tail = std::abs(c[m - 1] * std::pow(t, m - 1)) + std::abs(c[m - 2] * std::pow(t, m - 2));
  FnValue out;
  if (rho == 0.0) {
    out.value = v;
    out.derivative = d;
    out.est_error = tail + std::numeric_limits<double>::epsilon() * std::abs(v);
    return out;
  }
  const double p = std::pow(std::abs(t), rho);
  out.value = p * v;
  out.derivative = p * (d + rho * v / t);
  out.est_error = p * (tail + std::numeric_limits<double>::epsilon() * std::abs(v));
  return out;
}

int series_terms_for(double d, double R) {
  const double ratio = std::abs(d) / R;
  if (ratio <= 0.0) return 4;
  if (ratio >= 1.0) throw DomainError("series evaluated outside its radius of convergence");
  const int n = static_cast<int>(std::ceil(40.0 / -std::log10(ratio))) + 20;
  return std::min(n, 4000);
}

}  // namespace natanzon
