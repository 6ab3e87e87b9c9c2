#include "natanzon/potentials.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "natanzon/errors.hpp"
#include "natanzon/origin_series.hpp"
#include "natanzon/polynomial.hpp"

namespace natanzon {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Basis = std::array<std::pair<int, int>, 5>;

// Table-label partial-fraction basis z^a (z-1)^b of each representative,
// keyed by doubled exponents.
Basis table_basis(int a2, int b2) {
  switch (a2 * 10 + b2) {
    case 0: return {{{0, 0}, {-1, 0}, {-2, 0}, {0, -1}, {0, -2}}};
    case 1 * 10 - 1: return {{{0, 0}, {-1, 0}, {0, -1}, {0, -2}, {0, -3}}};
    case 1 * 10 + 0: return {{{0, 0}, {1, 0}, {-1, 0}, {0, -1}, {0, -2}}};
    case 1 * 10 + 1: return {{{0, 0}, {1, 0}, {2, 0}, {-1, 0}, {0, -1}}};
    case 2 * 10 - 2: return {{{0, 0}, {0, -1}, {0, -2}, {0, -3}, {0, -4}}};
    case 2 * 10 - 1: return {{{0, 0}, {1, 0}, {0, -1}, {0, -2}, {0, -3}}};
    case 2 * 10 + 0: return {{{0, 0}, {1, 0}, {2, 0}, {0, -1}, {0, -2}}};
    case 2 * 10 + 1: return {{{0, 0}, {1, 0}, {2, 0}, {3, 0}, {0, -1}}};
    case 2 * 10 + 2: return {{{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}}};
    default: break;
  }
  throw CatalogError("no table basis for doubled pair");
}

bool is_mirror_image(const ClassInfo& info) {
  return finite_singularity_count(info.family) == 2 &&
         !(canonical_pair(info.family, info.exponents) == info.exponents);
}

void require_heun(const ClassInfo& info) {
  if (!is_heun_family(info.family))
    throw CatalogError(std::string(to_string(info.family)) +
                       " classes carry no potential of their own; use the confluent Heun class");
}

int sign_pow(int n) { return n % 2 == 0 ? 1 : -1; }

// Integer-coefficient column polynomials, one per table label.
std::array<Poly, 5> label_columns(const ClassInfo& info) {
  require_heun(info);
  std::array<Poly, 5> cols;
  const int d1 = info.exponents.m1.doubled();
  switch (info.family) {
    case EquationFamily::ConfluentHeun: {
      const ExponentPair rep = canonical_pair(info.family, info.exponents);
      const int r1 = rep.m1.doubled();
      const int r2 = rep.m2.doubled();
      const Basis basis = table_basis(r1, r2);
      for (int k = 0; k < 5; ++k) {
        const int pa = basis[k].first + 2 - r1;
        const int pb = basis[k].second + 2 - r2;
        Poly col = poly_mul(poly_binomial(0.0, pa), poly_binomial(1.0, pb));
        col.resize(5, 0.0);
        cols[k] = col;
      }
      if (is_mirror_image(info)) {
        const int s = sign_pow(d1 + info.exponents.m2.doubled());
        for (Poly& c : cols) {
          c = poly_scale(poly_compose_affine(c, 1.0, -1.0), s);
          c.resize(5, 0.0);
        }
      }
      return cols;
    }
    case EquationFamily::DoubleConfluentHeun:
    case EquationFamily::BiConfluentHeun: {
      const bool dhe = info.family == EquationFamily::DoubleConfluentHeun;
      const double m = d1 / 2.0;
      const double d = dhe ? 4.0 : 2.0;
      for (int k = 0; k < 5; ++k) {
        Poly col(5, 0.0);
        if (dhe && d1 > 2) {
          col[k] = 1.0;
        } else {
          const int p = (dhe && d1 < 2) ? 4 - k : k;
          if (d1 == 2) {
            col[p] = 1.0;
          } else {
            const double e = (p - d + 2.0 * m) / (1.0 - m);
            col[p] = std::pow(1.0 - m, -e);
          }
        }
        cols[k] = col;
      }
      return cols;
    }
    case EquationFamily::TriConfluentHeun:
      for (int k = 0; k < 5; ++k) {
        cols[k] = Poly(5, 0.0);
        cols[k][k] = 1.0;
      }
      return cols;
    default: break;
  }
  throw CatalogError("unsupported family");
}

LabelMatrix invert(const LabelMatrix& m) {
  LabelMatrix a = m;
  LabelMatrix inv{};
  for (int i = 0; i < 5; ++i) inv[i][i] = 1.0;
  for (int c = 0; c < 5; ++c) {
    int piv = c;
    for (int r = c + 1; r < 5; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    if (a[piv][c] == 0.0) throw NumericalError("singular label matrix");
    std::swap(a[c], a[piv]);
    std::swap(inv[c], inv[piv]);
    const double d = a[c][c];
    for (int j = 0; j < 5; ++j) {
      a[c][j] /= d;
      inv[c][j] /= d;
    }
    for (int r = 0; r < 5; ++r) {
      if (r == c || a[r][c] == 0.0) continue;
      const double f = a[r][c];
      for (int j = 0; j < 5; ++j) {
        a[r][j] -= f * a[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

Coeffs mat_vec(const LabelMatrix& m, const Coeffs& x) {
  Coeffs y{};
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) y[i] += m[i][j] * x[j];
  return y;
}

// mat_vec with entries below the rounding bound of their dot product set to zero.
Coeffs mat_vec_rounded(const LabelMatrix& m, const Coeffs& x) {
  Coeffs y{};
  for (int i = 0; i < 5; ++i) {
    double bound = 0.0;
    for (int j = 0; j < 5; ++j) {
      y[i] += m[i][j] * x[j];
      bound += std::abs(m[i][j] * x[j]);
    }
    if (std::abs(y[i]) <= 32.0 * std::numeric_limits<double>::epsilon() * bound) y[i] = 0.0;
  }
  return y;
}

void require_lambert_class(const PotentialSpec& spec) {
  const ExponentPair lw{HalfInt(1), HalfInt(-1)};
  if (spec.info.family != EquationFamily::ConfluentHeun || !(spec.info.exponents == lw))
    throw CatalogError("operation defined for the confluent Heun class (1, -1) only");
  if (!(spec.sigma > 0.0)) throw DomainError("class (1, -1) expansion needs sigma > 0");
  if (std::abs(spec.x0 + spec.sigma) > 1e-12 * spec.sigma)
    throw DomainError("class (1, -1) expansion needs x0 = -sigma");
}

}  // namespace

LabelMatrix table_to_polynomial(const ClassInfo& info) {
  const auto cols = label_columns(info);
  LabelMatrix m{};
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) m[i][j] = cols[j][i];
  return m;
}

// The label matrices are unimodular, so the inverse is an integer matrix.
LabelMatrix polynomial_to_table(const ClassInfo& info) {
  LabelMatrix m = invert(table_to_polynomial(info));
  for (auto& row : m)
    for (double& e : row)
      if (std::abs(e - std::round(e)) < 1e-9) e = std::round(e);
  return m;
}

std::array<int, 2> prefactor_powers(const ClassInfo& info) {
  require_heun(info);
  const int d1 = info.exponents.m1.doubled();
  switch (info.family) {
    case EquationFamily::ConfluentHeun: return {d1 - 2, info.exponents.m2.doubled() - 2};
    case EquationFamily::DoubleConfluentHeun: return {d1 - 4, 0};
    case EquationFamily::BiConfluentHeun: return {d1 - 2, 0};
    default: return {0, 0};
  }
}

PotentialSpec PotentialSpec::from_polynomial(const ClassInfo& info, const Coeffs& v, double sigma,
                                             double x0) {
  require_heun(info);
  if (sigma == 0.0 || !std::isfinite(sigma)) throw DomainError("sigma must be finite and nonzero");
  PotentialSpec s;
  s.info = info;
  s.v = v;
  s.sigma = sigma;
  s.x0 = x0;
  s.branch = info.z_domain;
  return s;
}

PotentialSpec PotentialSpec::from_table(const ClassInfo& info, const Coeffs& table, double sigma,
                                        double x0) {
  return from_polynomial(info, mat_vec(table_to_polynomial(info), table), sigma, x0);
}

Coeffs PotentialSpec::table() const { return mat_vec_rounded(polynomial_to_table(info), v); }

MapSpec PotentialSpec::map() const {
  MapSpec m = MapSpec::make(info, sigma, x0);
  if (!(branch == info.z_domain)) m = m.with_branch(branch);
  return m;
}

PotentialSpec PotentialSpec::with_branch(ZInterval b) const {
  PotentialSpec s = *this;
  s.branch = b;
  (void)s.map();
  return s;
}

double eval_potential_z(const PotentialSpec& spec, double z) {
  if (!spec.branch.in_closure(z)) {
    std::ostringstream os;
    os << "z = " << z << " outside the branch of class " << to_string(spec.info.family) << " "
       << spec.info.exponents.str();
    throw DomainError(os.str());
  }
  auto [pa, pb] = prefactor_powers(spec.info);
  Poly p(spec.v.begin(), spec.v.end());
  const int dir = spec.branch.lo >= z ? 1 : -1;

  auto strip = [&p](int& power, double at) {
    while (power < 0) {
      double rem = 0.0;
      Poly q = poly_deflate(p, at, rem);
      if (rem != 0.0) return;
      p = std::move(q);
      ++power;
    }
  };
  if (z == 0.0) strip(pa, 0.0);
  if (z == 1.0) strip(pb, 1.0);

  const double pz = poly_eval(p, z);
  if (z == 0.0 && pa < 0) {
    if (pz == 0.0) return 0.0;
    const int s = (pz > 0 ? 1 : -1) * sign_pow(pb) * (dir < 0 ? sign_pow(-pa) : 1);
    return s * kInf;
  }
  if (z == 1.0 && pb < 0) {
    if (pz == 0.0) return 0.0;
    const int s = (pz > 0 ? 1 : -1) * (dir < 0 ? sign_pow(-pb) : 1);
    return s * kInf;
  }
  return std::pow(z, pa) * std::pow(z - 1.0, pb) * pz;
}

double eval_potential_x(const PotentialSpec& spec, double x) {
  return eval_potential_z(spec, z_of_x(spec.map(), x));
}

std::optional<double> explicit_x_form(const PotentialSpec& spec, double x) {
  const ClassInfo& info = spec.info;
  const Coeffs T = spec.table();
  double sigma = spec.sigma;
  ZInterval branch = spec.branch;
  ExponentPair pair = info.exponents;
  if (is_mirror_image(info)) {
    const auto c = [](HalfInt m) { return m.is_integer() ? sign_pow(m.doubled() / 2) : 1; };
    sigma = -c(pair.m1) * c(pair.m2) * sigma;
    branch = branch.reflected();
    pair = canonical_pair(info.family, pair);
  }
  const double t = (x - spec.x0) / sigma;
  const int a = pair.m1.doubled();
  const int b = pair.m2.doubled();

  switch (info.family) {
    case EquationFamily::ConfluentHeun: {
      const ZInterval canonical = class_info(info.family, pair).z_domain;
      const bool unit = !(branch.lo >= canonical.lo && branch.hi <= canonical.hi);
      if (unit) {
        if (a == 1 && b == 1) {
          const double s = std::sin(0.5 * t), c = std::cos(0.5 * t);
          return T[0] + T[1] * s * s + T[2] * s * s * s * s + T[3] / (s * s) - T[4] / (c * c);
        }
        if (a == 2 && b == 1) {
          const double ch2 = std::cosh(0.5 * t) * std::cosh(0.5 * t);
          const double th = std::tanh(0.5 * t);
          const double w = 1.0 / ch2;
          return T[0] + T[1] * w + T[2] * w * w + T[3] * w * w * w - T[4] / (th * th);
        }
        return std::nullopt;
      }
      switch (a * 10 + b) {
        case 0: return T[0] + T[1] / t + T[2] / (t * t) + T[3] / (t - 1.0) + T[4] / ((t - 1.0) * (t - 1.0));
        case 1 * 10 + 0: {
          const double q = 0.25 * t * t;
          return T[0] + T[1] * q + T[2] / q + T[3] / (q - 1.0) + T[4] / ((q - 1.0) * (q - 1.0));
        }
        case 1 * 10 + 1: {
          const double c = std::cosh(0.5 * t), s = std::sinh(0.5 * t);
          return T[0] + T[1] * c * c + T[2] * c * c * c * c + T[3] / (c * c) + T[4] / (s * s);
        }
        case 2 * 10 + 0: {
          const double e = std::exp(t);
          const double em = std::expm1(t);
          return T[0] + T[1] * e + T[2] * e * e + T[3] / em + T[4] / (em * em);
        }
        case 2 * 10 + 1: {
          const double tn = std::tan(0.5 * t);
          const double w = 1.0 + tn * tn;
          return T[0] + T[1] * w + T[2] * w * w + T[3] * w * w * w + T[4] / (tn * tn);
        }
        case 2 * 10 + 2: {
          const double w = 1.0 / (1.0 + std::exp(t));
          return T[0] + T[1] * w + T[2] * w * w + T[3] * w * w * w + T[4] * w * w * w * w;
        }
        default: return std::nullopt;
      }
    }
    case EquationFamily::DoubleConfluentHeun:
      switch (a) {
        case 0: return T[0] + T[1] / t + T[2] / (t * t) + T[3] / (t * t * t) + T[4] / (t * t * t * t);
        case 1: {
          const double t2 = t * t;
          return T[0] * t2 + T[1] + T[2] / t2 + T[3] / (t2 * t2) + T[4] / (t2 * t2 * t2);
        }
        case 2:
          return T[0] * std::exp(-2.0 * t) + T[1] * std::exp(-t) + T[2] + T[3] * std::exp(t) +
                 T[4] * std::exp(2.0 * t);
        case 3: {
          const double w = 4.0 / (t * t);
          return T[0] / w + T[1] + T[2] * w + T[3] * w * w + T[4] * w * w * w;
        }
        case 4: {
          const double w = -1.0 / t;
          return T[0] + T[1] * w + T[2] * w * w + T[3] * w * w * w + T[4] * w * w * w * w;
        }
        default: return std::nullopt;
      }
    case EquationFamily::BiConfluentHeun:
      switch (a) {
        case -2:
          return T[0] / (t * t) + T[1] / std::pow(t, 1.5) + T[2] / t + T[3] / std::sqrt(t) + T[4];
        case -1: {
          const double c = std::cbrt(t);
          return T[0] / (t * t) + T[1] / (c * t) + T[2] / (c * c) + T[3] + T[4] * c * c;
        }
        case 0: return T[0] / (t * t) + T[1] / t + T[2] + T[3] * t + T[4] * t * t;
        case 1: {
          const double t2 = t * t;
          return T[0] / t2 + T[1] + T[2] * t2 + T[3] * t2 * t2 + T[4] * t2 * t2 * t2;
        }
        case 2:
          return T[0] + T[1] * std::exp(t) + T[2] * std::exp(2.0 * t) + T[3] * std::exp(3.0 * t) +
                 T[4] * std::exp(4.0 * t);
        default: return std::nullopt;
      }
    case EquationFamily::TriConfluentHeun:
      return T[0] + t * (T[1] + t * (T[2] + t * (T[3] + t * T[4])));
    default: return std::nullopt;
  }
}

PotentialSpec mirror_relabel(const PotentialSpec& spec) {
  const ClassInfo& info = spec.info;
  if (info.family != EquationFamily::ConfluentHeun || !info.mirror)
    throw CatalogError("class " + info.exponents.str() + " has no z <-> 1-z partner");
  const ClassInfo partner = class_info(info.family, *info.mirror);
  const int s = sign_pow(info.exponents.m1.doubled() + info.exponents.m2.doubled());
  Poly p = poly_scale(poly_compose_affine(Poly(spec.v.begin(), spec.v.end()), 1.0, -1.0), s);
  Coeffs v{};
  for (int k = 0; k < 5; ++k) v[k] = p[k];
  const auto c = [](HalfInt m) { return m.is_integer() ? sign_pow(m.doubled() / 2) : 1; };
  const double sigma = -c(info.exponents.m1) * c(info.exponents.m2) * spec.sigma;
  PotentialSpec out = PotentialSpec::from_polynomial(partner, v, sigma, spec.x0);
  return out.with_branch(spec.branch.reflected());
}

TailInfo tail(const PotentialSpec& spec) {
  require_lambert_class(spec);
  const Coeffs T = spec.table();
  return {T[0] - T[1] + T[2] - T[3] + T[4], T[1] - 2.0 * T[2] + 3.0 * T[3] - 4.0 * T[4],
          1.0 / spec.sigma};
}

double tail_deviation(const PotentialSpec& spec, double x) {
  require_lambert_class(spec);
  const Coeffs T = spec.table();
  const double z = z_of_x(spec.map(), x);
  const double l = std::log1p(-z);
  double sum = 0.0;
  for (int n = 1; n <= 4; ++n) sum += T[n] * sign_pow(n) * -std::expm1(-n * l);
  return sum;
}

double OriginExpansion::eval(double x) const {
  double v = 0.0;
  for (int k = 0; k < 5; ++k) v += d[k] * std::pow(x, exponents[k]);
  return v;
}

OriginExpansion origin_expansion(const PotentialSpec& spec) {
  require_lambert_class(spec);
  constexpr int kTerms = 10;
  // tau - log(1 + tau) = s^2 / 2 with tau = z - 1 < 0 and s = sqrt(2 x / sigma).
  Series h(kTerms, 0.0);
  for (int j = 0; j < kTerms; ++j) h[j] = 2.0 * sign_pow(j) / (j + 2);
  const Series q = series_sqrt(h);
  Series g(kTerms, 0.0);
  for (int k = 0; k + 1 < kTerms; ++k) g[k + 1] = -q[k];
  const Series tau = series_reversion(g);
  Series ratio(kTerms - 1, 0.0);
  for (int k = 0; k + 1 < kTerms; ++k) ratio[k] = tau[k + 1];

  const Coeffs T = spec.table();
  // V = sum_n T_n tau^-n = sum_k e_k s^k.
  std::array<double, 5> e{};
  e[4] += T[0];
  for (int n = 1; n <= 4; ++n) {
    const Series r = series_pow(ratio, -n);
    for (int k = -n; k <= 0; ++k) e[k + 4] += T[n] * r[k + n];
  }
  OriginExpansion out;
  for (int k = -4; k <= 0; ++k) out.d[k + 4] = e[k + 4] * std::pow(2.0 / spec.sigma, 0.5 * k);
  return out;
}

}  // namespace natanzon
