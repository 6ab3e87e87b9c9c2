#include "natanzon/spectra.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <sstream>

#include <boost/math/tools/roots.hpp>

#include "natanzon/errors.hpp"
#include "natanzon/reduction.hpp"

namespace natanzon {

namespace {

constexpr double kBig = 1e200;

struct Shot {
  double w_m;
  double w_m1;
};

double numerov_c(double h2, double V, double E) { return 1.0 - h2 * (V - E) / 12.0; }

// Starting values for a sweep away from a Dirichlet end. Near the end,
// V - E ~ b/t^2 + a/t + c with (b, a, c) interpolated from the first three
// interior points, and psi is seeded from the regular solution
// t^s (1 + c1 t + c2 t^2). A plain psi_0 = 0 start would mix in the
// irregular solution at an inverse-square wall.
struct Seed {
  int j;  // first seeded index; psi_i = 0 for i < j
  double psi_j;
  double psi_j1;
};

Seed wall_seed(const std::function<double(int)>& V, int n, double h, double E) {
  const double h2 = h * h;
  const double q1 = V(1) * h2, q2 = V(2) * 4.0 * h2, q3 = V(3) * 9.0 * h2;
  // Newton divided differences of q(t) = b + a t + c t^2 at t = h, 2h, 3h.
  const double d12 = (q2 - q1) / h, d23 = (q3 - q2) / h;
  const double c = (d23 - d12) / (2.0 * h);
  const double a = d12 - 3.0 * h * c;
  const double b = q1 - a * h - c * h2;
  int j = 1;
  while (j < n / 4 && !(std::abs(numerov_c(h2, V(j), E) - 1.0) < 0.1)) ++j;
  if (!std::isfinite(b + a + c) || b <= -0.25) return {j, h, 2.0 * h};
  const double s = 0.5 + std::sqrt(0.25 + b);
  const double c1 = a / (2.0 * s);
  const double c2 = (a * c1 + (c - E)) / (2.0 * (2.0 * s + 1.0));
  auto psi = [&](double t) { return std::pow(t / (j * h), s) * (1.0 + c1 * t + c2 * t * t); };
  return {j, psi(j * h), psi((j + 1) * h)};
}

// Sweep from one Dirichlet end; index i counts grid steps away from that
// end. Returns sign changes of w over the sweep and, when at is given, the
// pair (w_m, w_{m+1}) in sweep order.
int sweep(const std::function<double(int)>& V, int n, double h, double E, int m, Shot* at) {
  const double h2 = h * h;
  const Seed seed = wall_seed(V, n, h, E);
  double prev = numerov_c(h2, V(seed.j), E) * seed.psi_j;
  double cur = numerov_c(h2, V(seed.j + 1), E) * seed.psi_j1;
  int changes = (prev < 0.0) != (cur < 0.0) ? 1 : 0;
  if (at && m < seed.j) *at = {0.0, m + 1 == seed.j ? prev : 0.0};
  if (at && m == seed.j) *at = {prev, cur};
  // Summed form: carry the first difference so the O(h^2) update is not
  // lost against 2 w_i - w_{i-1}.
  double diff = cur - prev;
  for (int i = seed.j + 1; i < n - 1; ++i) {
    const double dV = h2 * (V(i) - E);
    diff += dV / (1.0 - dV / 12.0) * cur;
    const double next = cur + diff;
    if ((next < 0.0 && cur > 0.0) || (next > 0.0 && cur < 0.0)) ++changes;
    prev = cur;
    cur = next;
    if (std::abs(cur) > kBig) {
      prev /= kBig;
      cur /= kBig;
      diff /= kBig;
    }
    if (at && i == m) *at = {prev, cur};
  }
  return changes;
}

int shoot_out(const NumerovProblem& p, double E, int m, Shot* at) {
  return sweep([&p](int i) { return p.V[i]; }, static_cast<int>(p.x.size()), p.h, E, m, at);
}

// Returns (w_m, w_{m+1}) in grid order.
Shot shoot_in(const NumerovProblem& p, double E, int m) {
  const int n = static_cast<int>(p.x.size());
  Shot r{};
  sweep([&p, n](int i) { return p.V[n - 1 - i]; }, n, p.h, E, n - 2 - m, &r);
  return {r.w_m1, r.w_m};
}

int matching_index(const NumerovProblem& p, double E) {
  const int n = static_cast<int>(p.x.size());
  int m = -1;
  for (int i = n - 2; i >= 1; --i)
    if (p.V[i] <= E) {
      m = i;
      break;
    }
  if (m < 0) m = n / 2;
  return std::clamp(m, 2, n - 3);
}

double casoratian(const NumerovProblem& p, double E, int m) {
  Shot l{};
  shoot_out(p, E, m, &l);
  const Shot r = shoot_in(p, E, m);
  const double nl = std::abs(l.w_m) + std::abs(l.w_m1), nr = std::abs(r.w_m) + std::abs(r.w_m1);
  return (l.w_m / nl) * (r.w_m1 / nr) - (l.w_m1 / nl) * (r.w_m / nr);
}

// Outermost points beyond which the WKB exponent at energy e exceeds decay.
double walk_out(const std::function<double(double)>& V, double start, double dir, double e, double decay,
                double step, double limit) {
  double x = start, integral = 0.0;
  double prev = std::sqrt(std::max(V(x) - e, 0.0));
  for (long it = 0; it < 50000000L; ++it) {
    const double xn = x + dir * step;
    if (dir > 0 ? xn >= limit : xn <= limit) return limit;
    const double vn = V(xn);
    if (!(vn > e)) {
      integral = 0.0;
      prev = 0.0;
    } else {
      const double cur = std::sqrt(vn - e);
      integral += 0.5 * (prev + cur) * step;
      prev = cur;
    }
    x = xn;
    if (integral >= decay) return x;
    if (std::abs(x - start) > 1e6 * step)
      throw NumericalError("could not truncate the domain: window top is above the potential at large |x|");
  }
  throw NumericalError("domain truncation did not terminate");
}

Spectrum solve_levels(const NumerovProblem& prob, std::pair<double, double> win, int n_max, bool parallel) {
  Spectrum s;
  s.x_lo = prob.x.front();
  s.x_hi = prob.x.back();
  s.grid_n = static_cast<int>(prob.x.size());
  const int c_lo = numerov_count(prob, win.first);
  const int c_hi = numerov_count(prob, win.second);
  const int first = c_lo;
  const int last = std::min(c_hi, c_lo + n_max);
  const int count = std::max(0, last - first);
  s.energies.assign(count, 0.0);
  s.node_counts.assign(count, 0);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int k = 0; k < count; ++k) {
    try {
      s.energies[k] = numerov_level(prob, first + k, win.first, win.second);
      s.node_counts[k] = first + k;
    } catch (...) {
#pragma omp critical(natanzon_numerov_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  s.method_tol = 0.0;
  for (double e : s.energies) s.method_tol = std::max(s.method_tol, 4.0 * std::numeric_limits<double>::epsilon() * std::abs(e));
  return s;
}

}  // namespace

NumerovProblem NumerovProblem::build(const std::function<double(double)>& V, double a, double b, int n) {
  if (n < 8) throw DomainError("Numerov grid needs at least 8 points");
  if (!(b > a)) throw DomainError("Numerov domain must have b > a");
  NumerovProblem p;
  p.h = (b - a) / (n - 1);
  p.x.resize(n);
  p.V.assign(n, 0.0);
  for (int i = 0; i < n; ++i) p.x[i] = a + p.h * i;
  p.x[n - 1] = b;
  for (int i = 1; i < n - 1; ++i) p.V[i] = V(p.x[i]);
  return p;
}

int numerov_count(const NumerovProblem& prob, double E) { return shoot_out(prob, E, -1, nullptr); }

double numerov_level(const NumerovProblem& prob, int n, double e_lo, double e_hi) {
  if (!(numerov_count(prob, e_lo) <= n && numerov_count(prob, e_hi) > n))
    throw NumericalError("numerov_level: level not inside the energy bracket");
  double lo = e_lo, hi = e_hi;
  for (int it = 0; it < 400; ++it) {
    const int cl = numerov_count(prob, lo), ch = numerov_count(prob, hi);
    if (cl == n && ch == n + 1) break;
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (numerov_count(prob, mid) <= n) lo = mid;
    else hi = mid;
  }
  const int m = matching_index(prob, 0.5 * (lo + hi));
  auto f = [&](double E) { return casoratian(prob, E, m); };
  const double fl = f(lo), fh = f(hi);
  if (std::isfinite(fl) && std::isfinite(fh) && fl != 0.0 && fh != 0.0 && (fl < 0.0) != (fh < 0.0)) {
    std::uintmax_t iters = 200;
    const auto r = boost::math::tools::toms748_solve(f, lo, hi, fl, fh,
                                                     boost::math::tools::eps_tolerance<double>(52), iters);
    return 0.5 * (r.first + r.second);
  }
  if (fl == 0.0) return lo;
  if (fh == 0.0) return hi;
  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (numerov_count(prob, mid) <= n) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

double potential_at(const PotentialSpec& spec, double x) {
  if (auto v = explicit_x_form(spec, x)) return *v;
  return eval_potential_x(spec, x);
}

Spectrum numerov_bound_states(const std::function<double(double)>& V, double a, double b,
                              std::pair<double, double> e_window, int n_max, const NumerovOptions& opt) {
  const NumerovProblem prob = NumerovProblem::build(V, a, b, opt.grid_n);
  Spectrum s = solve_levels(prob, e_window, n_max, opt.parallel);
  if (opt.richardson) {
    const NumerovProblem fine = NumerovProblem::build(V, a, b, 2 * opt.grid_n - 1);
    const Spectrum f = solve_levels(fine, e_window, n_max, opt.parallel);
    if (f.energies.size() == s.energies.size()) {
      double worst = 0.0;
      for (std::size_t k = 0; k < s.energies.size(); ++k) {
        const double d = f.energies[k] - s.energies[k];
        worst = std::max(worst, std::abs(d));
        s.energies[k] = f.energies[k] + d / 15.0;
      }
      s.grid_n = f.grid_n;
      s.method_tol = worst / 15.0;
    }
  }
  return s;
}

Spectrum numerov_bound_states(const PotentialSpec& spec, std::pair<double, double> e_window, int n_max,
                              const NumerovOptions& opt) {
  const MapSpec map = spec.map();
  const XRange image = x_image(map);
  std::function<double(double)> V = [&spec](double x) { return potential_at(spec, x); };
  double lo = image.lo, hi = image.hi;
  if (opt.even_extension) {
    if (std::isfinite(lo) == std::isfinite(hi))
      throw DomainError("even extension needs a half-line image");
    const double xb = std::isfinite(lo) ? lo : hi;
    const double s = std::isfinite(lo) ? 1.0 : -1.0;
    V = [&spec, xb, s](double x) { return potential_at(spec, xb + s * std::abs(x - xb)); };
    lo = -std::numeric_limits<double>::infinity();
    hi = std::numeric_limits<double>::infinity();
  }
  // Reference point and step from the sampling window of the class.
  const auto w = sample_window(spec);
  double xa = x_of_z(map, w[0]), xb = x_of_z(map, w[1]);
  if (xa > xb) std::swap(xa, xb);
  if (opt.even_extension) {
    const double c = std::isfinite(image.lo) ? image.lo : image.hi;
    xa = c - std::abs(xb - xa);
    xb = c + std::abs(xb - xa);
  }
  const double step = std::max(xb - xa, std::abs(spec.sigma)) / 2000.0;
  const double mid = 0.5 * (xa + xb);
  double a = opt.x_lo ? *opt.x_lo : lo;
  double b = opt.x_hi ? *opt.x_hi : hi;
  if (!std::isfinite(a)) a = walk_out(V, mid, -1.0, e_window.second, opt.wkb_decay, step, -1e300);
  if (!std::isfinite(b)) b = walk_out(V, mid, 1.0, e_window.second, opt.wkb_decay, step, 1e300);
  return numerov_bound_states(V, a, b, e_window, n_max, opt);
}

std::string_view to_string(Specialization s) {
  switch (s) {
    case Specialization::Eckart: return "eckart";
    case Specialization::PoschlTeller: return "poschl-teller";
    case Specialization::Morse: return "morse";
    case Specialization::Harmonic: return "harmonic";
    case Specialization::Kratzer: return "kratzer";
  }
  return "?";
}

Specialization parse_specialization(std::string_view name) {
  for (Specialization s : {Specialization::Eckart, Specialization::PoschlTeller, Specialization::Morse,
                           Specialization::Harmonic, Specialization::Kratzer})
    if (name == to_string(s)) return s;
  throw CatalogError("unknown specialization '" + std::string(name) +
                     "' (expected eckart, poschl-teller, morse, harmonic or kratzer)");
}

Spectrum closed_form_spectrum(Specialization name, const SpecializationParams& p, int n_max) {
  Spectrum s;
  const double sg = std::abs(p.sigma);
  auto push = [&s](double e, int n) {
    s.energies.push_back(e);
    s.node_counts.push_back(n);
  };
  switch (name) {
    case Specialization::Eckart: {
      const double nu = 0.5 + std::sqrt(0.25 + sg * sg * p.b);
      for (int n = 0; n < n_max; ++n) {
        const double k = nu + n;
        const double mu = (sg * sg * (p.a - p.b) - k * k) / (2.0 * k);
        if (!(mu > 0.0)) break;
        push(p.v0 - p.a + p.b - mu * mu / (sg * sg), n);
      }
      break;
    }
    case Specialization::PoschlTeller: {
      const double l = 2.0 * sg;
      const double lambda = 0.5 + std::sqrt(0.25 - p.a * l * l);
      for (int n = 0; n < n_max && n < lambda - 1.0; ++n) push(p.v0 - std::pow(lambda - 1.0 - n, 2) / (l * l), n);
      break;
    }
    case Specialization::Morse: {
      if (!(p.b > 0.0)) break;
      const double beta = -p.a * sg / (2.0 * std::sqrt(p.b));
      for (int n = 0; n < n_max && n < beta - 0.5; ++n) push(p.v0 - std::pow(beta - n - 0.5, 2) / (sg * sg), n);
      break;
    }
    case Specialization::Harmonic:
      if (!(p.b > 0.0)) break;
      for (int n = 0; n < n_max; ++n) push(p.v0 + (2.0 * n + 1.0) * std::sqrt(p.b) / sg, n);
      break;
    case Specialization::Kratzer: {
      if (!(p.a < 0.0)) break;
      const double s0 = 0.5 + std::sqrt(0.25 + p.b * sg * sg);
      for (int n = 0; n < n_max; ++n) push(p.v0 - std::pow(p.a * sg, 2) / (4.0 * std::pow(n + s0, 2)), n);
      break;
    }
  }
  if (s.energies.empty()) throw DomainError(std::string(to_string(name)) + ": parameters admit no bound state");
  return s;
}

PotentialSpec specialization_spec(Specialization name, const SpecializationParams& p) {
  const auto che = [](int d1, int d2) {
    return class_info(EquationFamily::ConfluentHeun, {HalfInt::from_doubled(d1), HalfInt::from_doubled(d2)});
  };
  switch (name) {
    case Specialization::Eckart:
      return PotentialSpec::from_table(che(2, 0), {p.v0, 0.0, 0.0, p.a, p.b}, p.sigma, p.x0)
          .with_branch(ZInterval{0.0, 1.0, true, true});
    case Specialization::PoschlTeller:
      return PotentialSpec::from_table(che(1, 1), {p.v0, 0.0, 0.0, p.a, 0.0}, p.sigma, p.x0);
    case Specialization::Morse:
      return PotentialSpec::from_table(che(2, 0), {p.v0, p.a, p.b, 0.0, 0.0}, p.sigma, p.x0);
    case Specialization::Harmonic:
      return PotentialSpec::from_table(class_info(EquationFamily::TriConfluentHeun, {}),
                                       {p.v0, 0.0, p.b, 0.0, 0.0}, p.sigma, p.x0);
    case Specialization::Kratzer:
      return PotentialSpec::from_table(che(0, 0), {p.v0, p.a, p.b, 0.0, 0.0}, p.sigma, p.x0)
          .with_branch(ZInterval{0.0, std::numeric_limits<double>::infinity(), true, true});
  }
  throw CatalogError("unknown specialization");
}

SpecializationParams specialization_params(Specialization name, const PotentialSpec& spec) {
  SpecializationParams p;
  p.sigma = spec.sigma;
  p.x0 = spec.x0;
  const Coeffs t = spec.table();
  p.v0 = t[0];
  std::array<int, 2> slot{};  // label indices read into a and b; -1 for unused
  switch (name) {
    case Specialization::Eckart: slot = {3, 4}; break;
    case Specialization::PoschlTeller: slot = {3, -1}; break;
    case Specialization::Morse: slot = {1, 2}; break;
    case Specialization::Harmonic: slot = {-1, 2}; break;
    case Specialization::Kratzer: slot = {1, 2}; break;
  }
  if (slot[0] >= 0) p.a = t[slot[0]];
  if (slot[1] >= 0) p.b = t[slot[1]];
  const PotentialSpec ref = specialization_spec(name, p);
  if (ref.info.family != spec.info.family || ref.info.exponents != spec.info.exponents)
    throw CatalogError(std::string(to_string(name)) + " is not a specialization of class " +
                       spec.info.exponents.str() + " of " + std::string(to_string(spec.info.family)) +
                       " (expected " + ref.info.exponents.str() + " of " + std::string(to_string(ref.info.family)) +
                       ")");
  for (int k = 1; k < 5; ++k)
    if (k != slot[0] && k != slot[1] && t[k] != 0.0)
      throw CatalogError(std::string(to_string(name)) + " needs label v" + std::to_string(k) + " = 0");
  return p;
}

CrossValidation cross_validate(Specialization name, const SpecializationParams& p, int n_max,
                               const NumerovOptions& opt) {
  CrossValidation cv;
  cv.name = name;
  cv.spec = specialization_spec(name, p);
  cv.oracle = closed_form_spectrum(name, p, n_max);
  const std::vector<double>& e = cv.oracle.energies;

  double next;
  const Spectrum more = closed_form_spectrum(name, p, n_max + 1);
  if (more.energies.size() > e.size()) {
    next = more.energies.back();
  } else {
    switch (name) {
      case Specialization::Eckart: next = p.v0 - p.a + p.b; break;
      default: next = p.v0; break;
    }
  }
  const double e_hi = e.back() + 0.5 * (next - e.back());
  const double e_lo = e.front() - (1.0 + std::abs(e.front()));

  NumerovOptions o = opt;
  o.even_extension = name == Specialization::PoschlTeller;
  cv.numerov = numerov_bound_states(cv.spec, {e_lo, e_hi}, n_max, o);
  if (cv.numerov.energies.size() != e.size()) {
    cv.max_rel_err = std::numeric_limits<double>::infinity();
  } else {
    for (std::size_t k = 0; k < e.size(); ++k)
      cv.max_rel_err = std::max(cv.max_rel_err, std::abs(cv.numerov.energies[k] - e[k]) / std::abs(e[k]));
  }
  return cv;
}

nlohmann::json to_json(const Spectrum& s) {
  return {{"energies", s.energies}, {"node_counts", s.node_counts}, {"domain", {s.x_lo, s.x_hi}},
          {"grid_n", s.grid_n}, {"method_tol", s.method_tol}};
}

nlohmann::json to_json(const CrossValidation& cv) {
  return {{"class", {{"family", std::string(to_string(cv.spec.info.family))},
                     {"m1", cv.spec.info.exponents.m1.str()},
                     {"m2", cv.spec.info.exponents.m2.str()}}},
          {"specialization", std::string(to_string(cv.name))},
          {"energies", cv.numerov.energies},
          {"node_counts", cv.numerov.node_counts},
          {"oracle_energies", cv.oracle.energies},
          {"max_rel_err", std::isfinite(cv.max_rel_err) ? nlohmann::json(cv.max_rel_err) : nlohmann::json("inf")}};
}

}  // namespace natanzon
