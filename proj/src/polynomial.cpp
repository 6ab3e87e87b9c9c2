#include "natanzon/polynomial.hpp"

#include <algorithm>

namespace natanzon {

double poly_eval(const Poly& p, double z) {
  double v = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * z + *it;
  return v;
}

void poly_eval_d2(const Poly& p, double z, double& v, double& d1, double& d2) {
  v = d1 = d2 = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    d2 = d2 * z + 2.0 * d1;
    d1 = d1 * z + v;
    v = v * z + *it;
  }
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

Poly poly_scale(const Poly& a, double s) {
  Poly r = a;
  for (double& c : r) c *= s;
  return r;
}

Poly poly_derivative(const Poly& a) {
  if (a.size() <= 1) return {0.0};
  Poly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = static_cast<double>(i) * a[i];
  return r;
}

Poly poly_binomial(double a, int n) {
  Poly r{1.0};
  const Poly f{-a, 1.0};
  for (int i = 0; i < n; ++i) r = poly_mul(r, f);
  return r;
}

Poly poly_compose_affine(const Poly& p, double a, double b) {
  Poly r{0.0};
  const Poly lin{a, b};
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    r = poly_mul(r, lin);
    r[0] += *it;
  }
  r.resize(std::max<std::size_t>(p.size(), 1));
  return r;
}

Poly poly_deflate(const Poly& p, double a, double& rem) {
  if (p.empty()) {
    rem = 0.0;
    return {};
  }
  Poly q(p.size() > 1 ? p.size() - 1 : 1, 0.0);
  double acc = 0.0;
  for (std::size_t k = p.size(); k-- > 0;) {
    acc = acc * a + p[k];
    if (k > 0) q[k - 1] = acc;
  }
  rem = acc;
  return q;
}

void poly_trim(Poly& p) {
  while (p.size() > 1 && p.back() == 0.0) p.pop_back();
}

}  // namespace natanzon
