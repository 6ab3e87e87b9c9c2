#include "natanzon/reduction.hpp"

#include <cmath>
#include <sstream>

#include "natanzon/errors.hpp"

namespace natanzon {

namespace {

struct Quadratic {
  RootStatus status;
  std::vector<std::pair<int, double>> roots;  // (sign tag, value)
};

// Roots center +- sqrt(disc).
Quadratic quadratic(double center, double disc, double scale) {
  if (std::abs(disc) <= 1e-14 * scale) return {RootStatus::Double, {{0, center}}};
  if (disc < 0.0) return {RootStatus::Complex, {}};
  const double s = std::sqrt(disc);
  return {RootStatus::Distinct, {{1, center + s}, {-1, center - s}}};
}

Quadratic absent() { return {RootStatus::Absent, {{0, 0.0}}}; }

void inconsistent(const char* what) {
  throw NumericalError(std::string("ansatz coefficient system inconsistent: ") + what);
}

bool nonpositive_integer(double c) { return c <= 0.0 && c == std::floor(c); }

std::vector<FnValue> canonical_solution(const PotentialSpec& spec, const WaveSolution& sol,
                                        const std::vector<double>& zs) {
  if (zs.empty()) return {};
  bool below_one = true, above_zero = true;
  double lo = zs[0], hi = zs[0];
  for (double z : zs) {
    below_one = below_one && z < 1.0;
    above_zero = above_zero && z > 0.0;
    lo = std::min(lo, z);
    hi = std::max(hi, z);
  }
  if (sol.family == EquationFamily::ConfluentHeun) {
    if (below_one && !nonpositive_integer(sol.heun.gamma)) return heun_c(sol.heun, zs);
    if (above_zero && !nonpositive_integer(sol.heun.delta)) return heun_c_at_one(sol.heun, zs);
  }
  (void)spec;
  return heun_local_solution(sol.family, sol.heun, 0.5 * (lo + hi), 1.0, 0.0, zs);
}

}  // namespace

std::string_view to_string(RootStatus s) {
  switch (s) {
    case RootStatus::Distinct: return "distinct";
    case RootStatus::Double: return "double";
    case RootStatus::Complex: return "complex";
    case RootStatus::Absent: return "absent";
  }
  return "?";
}

double invariant(EquationFamily family, const HeunParams& p, double z) {
  const bool singular = (family == EquationFamily::ConfluentHeun && (z == 0.0 || z == 1.0)) ||
                        ((family == EquationFamily::DoubleConfluentHeun ||
                          family == EquationFamily::BiConfluentHeun) &&
                         z == 0.0);
  if (singular) throw SingularPointError("invariant evaluated at a singular point");
  const HeunCoefficients c = heun_coefficients(family, p, z);
  return c.g - 0.5 * c.df - 0.25 * c.f * c.f;
}

Poly invariant_denominator(EquationFamily family) {
  switch (family) {
    case EquationFamily::ConfluentHeun: return {0.0, 0.0, 1.0, -2.0, 1.0};
    case EquationFamily::DoubleConfluentHeun: return {0.0, 0.0, 0.0, 0.0, 1.0};
    case EquationFamily::BiConfluentHeun: return {0.0, 0.0, 1.0};
    case EquationFamily::TriConfluentHeun: return {1.0};
    default: throw CatalogError("not a Heun-type family");
  }
}

Poly invariant_numerator(EquationFamily family, const HeunParams& p) {
  const double g = p.gamma, d = p.delta, e = p.epsilon, a = p.alpha, q = p.q;
  switch (family) {
    case EquationFamily::ConfluentHeun:
      return {g / 2 - g * g / 4,
              q + g * d / 2 - g * e / 2 + g * g / 2 - g,
              -a - d * d / 4 + d * e / 2 - d * g / 2 + d / 2 - e * e / 4 + e * g - g * g / 4 + g / 2 - q,
              a - d * e / 2 + e * e / 2 - e * g / 2,
              -e * e / 4};
    case EquationFamily::DoubleConfluentHeun:
      return {-g * g / 4, g - d * g / 2, -d * d / 4 + d / 2 - e * g / 2 - q, a - d * e / 2, -e * e / 4};
    case EquationFamily::BiConfluentHeun:
      return {g / 2 - g * g / 4, -d * g / 2 - q, a - d * d / 4 - e * g / 2 - e / 2, -d * e / 2, -e * e / 4};
    case EquationFamily::TriConfluentHeun:
      return {-d / 2 - g * g / 4 - q, a - d * g / 2 - e, -d * d / 4 - e * g / 2, -d * e / 2, -e * e / 4};
    default: throw CatalogError("not a Heun-type family");
  }
}

Poly required_numerator(const PotentialSpec& spec, double E) {
  const ClassInfo& info = spec.info;
  const double s = rho_squared_sign(spec.map());
  const double s2 = spec.sigma * spec.sigma * s;
  const Poly P(spec.v.begin(), spec.v.end());
  const int d1 = info.exponents.m1.doubled();
  const double m1 = info.exponents.m1.value();
  Poly R;
  switch (info.family) {
    case EquationFamily::ConfluentHeun: {
      const int d2 = info.exponents.m2.doubled();
      const double m2 = info.exponents.m2.value();
      const Poly energy = poly_scale(poly_mul(poly_binomial(0.0, 2 - d1), poly_binomial(1.0, 2 - d2)), E);
      const Poly Q = poly_add(poly_add(poly_scale(poly_binomial(1.0, 2), 0.5 * m1 * m1 - m1),
                                       poly_scale(Poly{0.0, 0.0, 1.0}, 0.5 * m2 * m2 - m2)),
                              poly_scale(Poly{0.0, -1.0, 1.0}, m1 * m2));
      R = poly_add(poly_scale(poly_add(energy, poly_scale(P, -1.0)), s2), poly_scale(Q, -0.5));
      break;
    }
    case EquationFamily::DoubleConfluentHeun:
    case EquationFamily::BiConfluentHeun: {
      const int d = info.family == EquationFamily::DoubleConfluentHeun ? 4 : 2;
      const Poly energy = poly_scale(poly_binomial(0.0, d - d1), E);
      R = poly_add(poly_scale(poly_add(energy, poly_scale(P, -1.0)), s2),
                   poly_scale(poly_binomial(0.0, d - 2), -0.5 * (0.5 * m1 * m1 - m1)));
      break;
    }
    case EquationFamily::TriConfluentHeun:
      R = poly_scale(poly_add(Poly{E}, poly_scale(P, -1.0)), s2);
      break;
    default: throw CatalogError("not a Heun-type family");
  }
  R.resize(5, 0.0);
  return R;
}

AnsatzFactors ansatz_factors(EquationFamily family, HeunParams p, HalfInt m1, HalfInt m2) {
  switch (family) {
    case EquationFamily::ConfluentHeun:
      return {p.epsilon / 2, (p.gamma - m1.value()) / 2, (p.delta - m2.value()) / 2};
    case EquationFamily::DoubleConfluentHeun:
      return {p.epsilon / 2, (p.delta - m1.value()) / 2, -p.gamma / 2};
    case EquationFamily::BiConfluentHeun:
      return {p.delta / 2, (p.gamma - m1.value()) / 2, p.epsilon / 4};
    case EquationFamily::TriConfluentHeun:
      return {p.gamma / 2, p.delta / 4, p.epsilon / 6};
    default: throw CatalogError("not a Heun-type family");
  }
}

PrefactorValue prefactor(EquationFamily family, const AnsatzFactors& a, double z) {
  switch (family) {
    case EquationFamily::ConfluentHeun: {
      const double w = z - 1.0;
      return {a.a0 * z + a.a1 * std::log(std::abs(z)) + a.a2 * std::log(std::abs(w)),
              a.a0 + a.a1 / z + a.a2 / w, -a.a1 / (z * z) - a.a2 / (w * w)};
    }
    case EquationFamily::DoubleConfluentHeun:
      return {a.a0 * z + a.a1 * std::log(std::abs(z)) + a.a2 / z, a.a0 + a.a1 / z - a.a2 / (z * z),
              -a.a1 / (z * z) + 2.0 * a.a2 / (z * z * z)};
    case EquationFamily::BiConfluentHeun:
      return {a.a0 * z + a.a1 * std::log(std::abs(z)) + a.a2 * z * z, a.a0 + a.a1 / z + 2.0 * a.a2 * z,
              -a.a1 / (z * z) + 2.0 * a.a2};
    case EquationFamily::TriConfluentHeun:
      return {z * (a.a0 + z * (a.a1 + z * a.a2)), a.a0 + z * (2.0 * a.a1 + 3.0 * a.a2 * z),
              2.0 * a.a1 + 6.0 * a.a2 * z};
    default: throw CatalogError("not a Heun-type family");
  }
}

std::string WaveSolution::tag() const {
  static const char* kNames[4][3] = {{"gamma", "delta", "epsilon"},
                                     {"gamma", "epsilon", ""},
                                     {"gamma", "epsilon", ""},
                                     {"epsilon", "delta", ""}};
  int row = 0;
  switch (family) {
    case EquationFamily::DoubleConfluentHeun: row = 1; break;
    case EquationFamily::BiConfluentHeun: row = 2; break;
    case EquationFamily::TriConfluentHeun: row = 3; break;
    default: break;
  }
  std::string out;
  for (int k = 0; k < 3; ++k) {
    if (kNames[row][k][0] == '\0') continue;
    if (!out.empty()) out += ',';
    out += kNames[row][k];
    out += branch[k] > 0 ? "+" : branch[k] < 0 ? "-" : "0";
  }
  if (free_parameter_fixed) out += ",free=0";
  return out;
}

AnsatzResult solve_ansatz(const PotentialSpec& spec, double E) {
  const EquationFamily family = spec.info.family;
  if (!is_heun_family(family)) throw CatalogError("solve_ansatz needs a Heun-type family");
  const Poly R = required_numerator(spec, E);
  const double r0 = R[0], r1 = R[1], r2 = R[2], r3 = R[3], r4 = R[4];
  double scale = 1.0;
  for (double c : R) scale += std::abs(c);
  const double tol = 1e-12 * scale;

  std::array<Quadratic, 3> slots{absent(), absent(), absent()};
  switch (family) {
    case EquationFamily::ConfluentHeun:
      slots[0] = quadratic(1.0, 1.0 - 4.0 * r0, scale);
      slots[1] = quadratic(1.0, 1.0 - 4.0 * (r0 + r1 + r2 + r3 + r4), scale);
      slots[2] = quadratic(0.0, -4.0 * r4, scale);
      break;
    case EquationFamily::DoubleConfluentHeun:
      slots[0] = quadratic(0.0, -4.0 * r0, scale);
      slots[1] = quadratic(0.0, -4.0 * r4, scale);
      break;
    case EquationFamily::BiConfluentHeun:
      slots[0] = quadratic(1.0, 1.0 - 4.0 * r0, scale);
      slots[1] = quadratic(0.0, -4.0 * r4, scale);
      break;
    default:
      slots[0] = quadratic(0.0, -4.0 * r4, scale);
      if (slots[0].status == RootStatus::Double) {
        if (std::abs(r3) > tol) inconsistent("epsilon = 0 but the z^3 coefficient is nonzero");
        slots[1] = quadratic(0.0, -4.0 * r2, scale);
      }
      break;
  }

  AnsatzResult out;
  for (int k = 0; k < 3; ++k) out.status[k] = slots[k].status;
  for (const Quadratic& s : slots)
    if (s.status == RootStatus::Complex) return out;

  const HalfInt m1 = spec.info.exponents.m1, m2 = spec.info.exponents.m2;
  for (const auto& [t0, x0] : slots[0].roots)
    for (const auto& [t1, x1] : slots[1].roots)
      for (const auto& [t2, x2] : slots[2].roots) {
        WaveSolution sol;
        sol.family = family;
        sol.energy = E;
        sol.branch = {t0, t1, t2};
        HeunParams& p = sol.heun;
        switch (family) {
          case EquationFamily::ConfluentHeun: {
            p.gamma = x0;
            p.delta = x1;
            p.epsilon = x2;
            const double A = p.gamma / 2 - p.gamma * p.gamma / 4;
            const double C = -p.epsilon * p.epsilon / 4;
            p.alpha = r3 + 2 * C + (p.gamma + p.delta) * p.epsilon / 2;
            p.q = r1 + 2 * A - p.gamma * p.delta / 2 + p.gamma * p.epsilon / 2;
            break;
          }
          case EquationFamily::DoubleConfluentHeun:
            p.gamma = x0;
            p.epsilon = x1;
            if (slots[0].status == RootStatus::Double) {
              if (std::abs(r1) > tol) inconsistent("gamma = 0 but the z^1 coefficient is nonzero");
              p.delta = 0.0;
              sol.free_parameter_fixed = true;
            } else {
              p.delta = 2.0 - 2.0 * r1 / p.gamma;
            }
            p.q = -r2 - p.delta * p.delta / 4 + p.delta / 2 - p.epsilon * p.gamma / 2;
            p.alpha = r3 + p.delta * p.epsilon / 2;
            break;
          case EquationFamily::BiConfluentHeun:
            p.gamma = x0;
            p.epsilon = x1;
            if (slots[1].status == RootStatus::Double) {
              if (std::abs(r3) > tol) inconsistent("epsilon = 0 but the z^3 coefficient is nonzero");
              p.delta = 0.0;
              sol.free_parameter_fixed = true;
            } else {
              p.delta = -2.0 * r3 / p.epsilon;
            }
            p.alpha = r2 + p.delta * p.delta / 4 + p.epsilon * p.gamma / 2 + p.epsilon / 2;
            p.q = -r1 - p.delta * p.gamma / 2;
            break;
          default:
            p.epsilon = x0;
            if (slots[0].status == RootStatus::Double) {
              p.delta = x1;
              p.gamma = 0.0;
              sol.free_parameter_fixed = true;
            } else {
              p.delta = -2.0 * r3 / p.epsilon;
              p.gamma = (-4.0 * r2 - p.delta * p.delta) / (2.0 * p.epsilon);
            }
            p.alpha = r1 + p.delta * p.gamma / 2 + p.epsilon;
            p.q = -r0 - p.delta / 2 - p.gamma * p.gamma / 4;
            break;
        }
        sol.factors = ansatz_factors(family, p, m1, m2);
        out.solutions.push_back(sol);
      }
  return out;
}

double residual(const PotentialSpec& spec, const WaveSolution& sol, const std::vector<double>& x_grid) {
  const MapSpec map = spec.map();
  double worst = 0.0;
  for (double x : x_grid) {
    const double z = z_of_x(map, x);
    const double r = rho(map, z);
    const double S = schwarzian(map, z);
    const double V = eval_potential_z(spec, z);
    const double rI = r * r * invariant(sol.family, sol.heun, z);
    const double E = sol.energy;
    const double res = std::abs(rI + 0.5 * S - (E - V));
    worst = std::max(worst, res);
  }
  return worst;
}

double residual_psi(const PotentialSpec& spec, const WaveSolution& sol, const std::vector<double>& x_grid) {
  const MapSpec map = spec.map();
  std::vector<double> zs(x_grid.size());
  for (std::size_t i = 0; i < x_grid.size(); ++i) zs[i] = z_of_x(map, x_grid[i]);
  const std::vector<FnValue> u = canonical_solution(spec, sol, zs);
  double worst = 0.0;
  for (std::size_t i = 0; i < zs.size(); ++i) {
    const double z = zs[i];
    const PrefactorValue ph = prefactor(sol.family, sol.factors, z);
    const HeunCoefficients c = heun_coefficients(sol.family, sol.heun, z);
    const double uu = u[i].value, du = u[i].derivative;
    const double d2u = -c.f * du - c.g * uu;
    const double r = rho(map, z);
    const double L = rho_log_derivative(map, z);
    // psi''/phi = rho^2 [psi_zz/phi + L psi_z/phi].
    const double t1 = (ph.d2 + ph.d1 * ph.d1) * uu;
    const double t2 = 2.0 * ph.d1 * du;
    const double t3 = d2u;
    const double t4 = L * ph.d1 * uu;
    const double t5 = L * du;
    const double V = eval_potential_z(spec, z);
    const double kin = r * r * (t1 + t2 + t3 + t4 + t5);
    const double pot = (sol.energy - V) * uu;
    const double scale = r * r * (std::abs(t1) + std::abs(t2) + std::abs(t3) + std::abs(t4) + std::abs(t5)) +
                         std::abs(pot) + 1e-300;
    worst = std::max(worst, std::abs(kin + pot) / scale);
  }
  return worst;
}

std::vector<PsiSample> build_psi(const PotentialSpec& spec, const WaveSolution& sol,
                                 const std::vector<double>& x_grid) {
  const MapSpec map = spec.map();
  std::vector<double> zs(x_grid.size());
  for (std::size_t i = 0; i < x_grid.size(); ++i) zs[i] = z_of_x(map, x_grid[i]);
  std::vector<double> inner;
  std::vector<std::size_t> idx;
  std::vector<PsiSample> out(x_grid.size());
  for (std::size_t i = 0; i < zs.size(); ++i) {
    out[i] = {x_grid[i], zs[i], 0.0, 0.0};
    if (spec.branch.in_interior(zs[i])) {
      inner.push_back(zs[i]);
      idx.push_back(i);
    }
  }
  const std::vector<FnValue> u = canonical_solution(spec, sol, inner);
  for (std::size_t k = 0; k < inner.size(); ++k) {
    const double z = inner[k];
    const PrefactorValue ph = prefactor(sol.family, sol.factors, z);
    const double phi = std::exp(ph.log_phi);
    out[idx[k]].psi = phi * u[k].value;
    out[idx[k]].dpsi_dx = rho(map, z) * phi * (ph.d1 * u[k].value + u[k].derivative);
  }
  return out;
}

std::array<double, 2> sample_window(const PotentialSpec& spec) {
  const ZInterval& b = spec.branch;
  const int n = finite_singularity_count(spec.info.family);
  if (b.lo >= 0.0 && b.hi <= 1.0) return {0.1, 0.9};
  if (b.lo >= 1.0) return {1.1, 4.0};
  if (b.hi <= 0.0) return {-3.0, -0.1};
  if (b.lo >= 0.0) return n == 2 ? std::array<double, 2>{0.1, 0.85} : std::array<double, 2>{0.2, 3.0};
  if (b.hi <= 1.0) return {0.15, 0.9};
  if (n == 0) return {-2.0, 2.0};
  return {0.15, 0.85};
}

std::vector<double> sample_grid(const PotentialSpec& spec, int n) {
  const auto w = sample_window(spec);
  const MapSpec map = spec.map();
  double a = x_of_z(map, w[0]), b = x_of_z(map, w[1]);
  if (a > b) std::swap(a, b);
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) xs[i] = n == 1 ? 0.5 * (a + b) : a + (b - a) * i / (n - 1);
  return xs;
}

std::vector<VerifyDraw> random_draws(const ClassInfo& info, std::mt19937_64& rng, int n_energies) {
  std::uniform_real_distribution<double> coef_dist(-2.0, 2.0);
  std::uniform_real_distribution<double> sigma_dist(0.5, 1.5);
  std::uniform_real_distribution<double> x0_dist(-0.5, 0.5);
  std::uniform_real_distribution<double> e_dist(-3.0, 3.0);
  for (int attempt = 0; attempt < 20000; ++attempt) {
    Coeffs table{};
    for (double& t : table) t = coef_dist(rng);
    const double sigma = sigma_dist(rng);
    const double x0 = x0_dist(rng);
    const PotentialSpec spec = PotentialSpec::from_table(info, table, sigma, x0);
    std::vector<VerifyDraw> out;
    for (int k = 0; k < 50 * n_energies && static_cast<int>(out.size()) < n_energies; ++k) {
      const double E = e_dist(rng);
      try {
        if (!solve_ansatz(spec, E).solutions.empty()) out.push_back({spec, E});
      } catch (const NumericalError&) {
      }
    }
    if (static_cast<int>(out.size()) == n_energies) return out;
  }
  throw NumericalError("random_draws: no admissible draw found for class " + info.exponents.str());
}

std::vector<VerifyRecord> verify_draw(const VerifyDraw& draw, int grid_points) {
  const std::vector<double> xs = sample_grid(draw.spec, grid_points);
  const AnsatzResult res = solve_ansatz(draw.spec, draw.energy);
  std::vector<VerifyRecord> out;
  const Coeffs table = draw.spec.table();
  for (const WaveSolution& sol : res.solutions) {
    VerifyRecord r;
    r.family = draw.spec.info.family;
    r.exponents = draw.spec.info.exponents;
    r.table = table;
    r.sigma = draw.spec.sigma;
    r.x0 = draw.spec.x0;
    r.energy = draw.energy;
    r.branch = sol.tag();
    r.residual_identity = residual(draw.spec, sol, xs);
    r.residual_psi = residual_psi(draw.spec, sol, xs);
    out.push_back(r);
  }
  return out;
}

nlohmann::json to_json(const VerifyRecord& r) {
  return {{"class", {{"family", std::string(to_string(r.family))},
                     {"m1", r.exponents.m1.str()},
                     {"m2", r.exponents.m2.str()}}},
          {"v", r.table},
          {"sigma", r.sigma},
          {"x0", r.x0},
          {"E", r.energy},
          {"branch", r.branch},
          {"residual_identity", r.residual_identity},
          {"residual_psi", r.residual_psi}};
}

std::vector<ClassInfo> verification_classes() {
  std::vector<ClassInfo> out;
  for (EquationFamily f : {EquationFamily::ConfluentHeun, EquationFamily::DoubleConfluentHeun,
                           EquationFamily::BiConfluentHeun, EquationFamily::TriConfluentHeun}) {
    const auto reps = independent_representatives(f);
    out.insert(out.end(), reps.begin(), reps.end());
  }
  return out;
}

}  // namespace natanzon
