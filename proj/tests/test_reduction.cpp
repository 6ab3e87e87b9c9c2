#include <doctest.h>

#include <cmath>
#include <random>

#include "natanzon/coordmap.hpp"
#include "natanzon/errors.hpp"
#include "natanzon/reduction.hpp"

using namespace natanzon;

namespace {

constexpr auto CHE = EquationFamily::ConfluentHeun;

ClassInfo che(int a, int b) { return class_info(CHE, {HalfInt::from_doubled(a), HalfInt::from_doubled(b)}); }

// Generalized Laguerre polynomial L_n^(a)(x) by the three-term recurrence.
double laguerre(int n, double a, double x) {
  double prev = 1.0, cur = 1.0 + a - x;
  if (n == 0) return prev;
  for (int k = 1; k < n; ++k) {
    const double next = ((2 * k + 1 + a - x) * cur - (k + a) * prev) / (k + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(lo + (hi - lo) * i / (n - 1));
  return v;
}

}  // namespace

TEST_CASE("invariant examples") {
  for (double z : {-1.5, 0.3, 0.5, 2.0}) {
    CHECK(invariant(CHE, HeunParams{}, z) == 0.0);
    CHECK(invariant(CHE, HeunParams{0, 0, 0.8, 0, 0}, z) == doctest::Approx(-0.16).epsilon(1e-15));
  }
  CHECK_THROWS_AS(invariant(CHE, HeunParams{}, 1.0), SingularPointError);
  CHECK_THROWS_AS(invariant(EquationFamily::BiConfluentHeun, HeunParams{}, 0.0), SingularPointError);
}

TEST_CASE("invariant agrees with the normal form of a numerical solution") {
  // w = u exp(F/2) with F' = f solves w'' + I w = 0 whenever u solves the canonical equation.
  const HeunParams p{1.3, -0.6, 0.9, 0.4, -0.7};
  auto w = [&](double z) {
    const double F = p.gamma * std::log(std::abs(z)) + p.delta * std::log(std::abs(z - 1.0)) + p.epsilon * z;
    return heun_c(p, z).value * std::exp(0.5 * F);
  };
  for (double z : {0.2, 0.35, 0.5}) {
    const double h = 1e-3;
    const double d2 = (-w(z + 2 * h) + 16 * w(z + h) - 30 * w(z) + 16 * w(z - h) - w(z - 2 * h)) / (12 * h * h);
    CHECK(-d2 / w(z) == doctest::Approx(invariant(CHE, p, z)).epsilon(1e-7));
  }
  // Numerator and denominator recombine to the same value.
  for (auto fam : {CHE, EquationFamily::DoubleConfluentHeun, EquationFamily::BiConfluentHeun,
                   EquationFamily::TriConfluentHeun})
    for (double z : {-0.7, 0.4, 1.9}) {
      const double I = poly_eval(invariant_numerator(fam, p), z) / poly_eval(invariant_denominator(fam), z);
      CHECK(I == doctest::Approx(invariant(fam, p, z)).epsilon(1e-12));
    }
}

TEST_CASE("identity and wavefunction residuals for every verification class") {
  std::mt19937_64 rng(2024);
  const auto classes = verification_classes();
  CHECK(classes.size() == 18);
  for (const auto& info : classes) {
    for (const auto& d : random_draws(info, rng, 3)) {
      const auto res = solve_ansatz(d.spec, d.energy);
      int distinct = 0;
      bool complex = false;
      for (RootStatus s : res.status) {
        distinct += s == RootStatus::Distinct;
        complex = complex || s == RootStatus::Complex;
      }
      REQUIRE_FALSE(complex);
      CHECK(res.solutions.size() == (std::size_t{1} << distinct));
      const auto grid = sample_grid(d.spec, 200);
      for (const auto& sol : res.solutions) {
        CHECK_MESSAGE(residual(d.spec, sol, grid) <= 1e-9, to_string(info.family), info.exponents.str(), " ", sol.tag());
        CHECK_MESSAGE(residual_psi(d.spec, sol, grid) <= 1e-9, to_string(info.family), info.exponents.str(), " ",
                      sol.tag());
      }
    }
  }
}

TEST_CASE("residual detects wrong parameters") {
  std::mt19937_64 rng(5);
  for (const auto& info : verification_classes()) {
    const auto d = random_draws(info, rng, 1).front();
    auto sol = solve_ansatz(d.spec, d.energy).solutions.front();
    sol.heun.q += 1e-3;
    CHECK(residual(d.spec, sol, sample_grid(d.spec, 200)) > 1e-4);
  }
}

TEST_CASE("free particle") {
  const auto spec = PotentialSpec::from_table(che(0, 0), {0, 0, 0, 0, 0}, 1.0, 0.0);
  const auto res = solve_ansatz(spec, 0.0);
  bool trivial = false;
  for (const auto& s : res.solutions)
    if (s.factors.a0 == 0.0 && s.factors.a1 == 0.0 && s.factors.a2 == 0.0) {
      trivial = true;
      CHECK(residual(spec, s, sample_grid(spec, 50)) <= 1e-15);
    }
  CHECK(trivial);
  const auto moving = solve_ansatz(spec, -2.0);
  REQUIRE_FALSE(moving.solutions.empty());
  for (const auto& s : moving.solutions) CHECK(residual_psi(spec, s, sample_grid(spec, 200)) <= 1e-9);
}

TEST_CASE("prefactor law") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (const auto& info : verification_classes()) {
    for (const auto& d : random_draws(info, rng, 1)) {
      const MapSpec map = d.spec.map();
      const auto w = sample_window(d.spec);
      for (const auto& sol : solve_ansatz(d.spec, d.energy).solutions)
        for (int k = 0; k < 10; ++k) {
          const double z = w[0] + (w[1] - w[0]) * u(rng);
          const double lhs = prefactor(info.family, sol.factors, z).d1;
          const double rhs = -0.5 * rho_log_derivative(map, z) + 0.5 * heun_coefficients(info.family, sol.heun, z).f;
          CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
        }
    }
  }
}

TEST_CASE("ansatz exponents for the exponential class") {
  // V = V0 + V1 z + V2 z^2 with z = exp(x / sigma): decaying root a0 = -sqrt(V2) sigma.
  const double sigma = 0.8, V2 = 2.5;
  const auto spec = PotentialSpec::from_table(che(2, 0), {0.5, -3.0, V2, 0, 0}, sigma, 0.0);
  const auto res = solve_ansatz(spec, -1.0);
  bool found = false;
  for (const auto& s : res.solutions) found = found || std::abs(s.factors.a0 + std::sqrt(V2) * sigma) < 1e-13;
  CHECK(found);
}

TEST_CASE("bound state of the exponential class matches the Laguerre form") {
  // V = a z + b z^2, z = exp(x / sigma); levels -(beta - n - 1/2)^2 / sigma^2 with
  // beta = -a sigma / (2 sqrt b), psi = xi^s exp(-xi / 2) L_n^(2s)(xi), xi = 2 sqrt(b) sigma z.
  const double sigma = 1.0, a = -2.0, b = 0.09;
  const double beta = -a * sigma / (2.0 * std::sqrt(b));
  const auto spec = PotentialSpec::from_table(che(2, 0), {0, a, b, 0, 0}, sigma, 0.0);
  for (int n = 0; n < 3; ++n) {
    const double s = beta - n - 0.5;
    const double E = -s * s / (sigma * sigma);
    std::vector<double> xs;
    for (double z : linspace(0.05, 0.95, 10)) xs.push_back(x_of_z(spec.map(), z));
    int checked = 0;
    for (const auto& sol : solve_ansatz(spec, E).solutions) {
      if (sol.factors.a1 <= 0.0) continue;
      CHECK(sol.factors.a1 == doctest::Approx(s).epsilon(1e-12));
      const auto psi = build_psi(spec, sol, xs);
      double ratio0 = 0.0;
      for (const auto& p : psi) {
        const double xi = 2.0 * std::sqrt(b) * sigma * p.z;
        const double ref = std::pow(xi, s) * std::exp(-0.5 * xi) * laguerre(n, 2.0 * s, xi);
        const double ratio = p.psi / ref;
        if (ratio0 == 0.0) ratio0 = ratio;
        CHECK(ratio == doctest::Approx(ratio0).epsilon(1e-8));
      }
      ++checked;
    }
    CHECK(checked > 0);
  }
}

TEST_CASE("psi vanishes where the z^a1 factor does") {
  const auto spec = PotentialSpec::from_table(che(0, 0), {0, 0, 0.75, 0, 0}, 1.0, 0.0);
  int checked = 0;
  for (const auto& sol : solve_ansatz(spec, -1.0).solutions) {
    if (sol.factors.a1 <= 0.0) continue;
    const auto psi = build_psi(spec, sol, {0.0});
    CHECK(psi[0].z == 0.0);
    CHECK(psi[0].psi == 0.0);
    ++checked;
  }
  CHECK(checked > 0);
}

TEST_CASE("verification records") {
  std::mt19937_64 rng(9);
  const auto d = random_draws(che(2, -2), rng, 1).front();
  const auto recs = verify_draw(d, 200);
  REQUIRE_FALSE(recs.empty());
  const auto j = to_json(recs.front());
  for (const char* key : {"class", "v", "E", "branch", "residual_identity", "residual_psi"}) CHECK(j.contains(key));
}
