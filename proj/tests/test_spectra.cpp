#include <doctest.h>

#include <cmath>

#include "natanzon/errors.hpp"
#include "natanzon/spectra.hpp"

using namespace natanzon;

namespace {

PotentialSpec oscillator(double b, double sigma = 1.0) {
  return PotentialSpec::from_table(class_info(EquationFamily::TriConfluentHeun, {}), {0, 0, b, 0, 0}, sigma, 0.0);
}

void check_sturm(const Spectrum& s) {
  for (std::size_t i = 0; i < s.energies.size(); ++i) {
    CHECK(s.node_counts[i] == static_cast<int>(i));
    if (i > 0) CHECK(s.energies[i] > s.energies[i - 1]);
  }
}

}  // namespace

TEST_CASE("harmonic oscillator levels") {
  const Spectrum s = numerov_bound_states(oscillator(1.0), {-1.0, 10.0}, 5);
  REQUIRE(s.energies.size() == 5);
  for (int n = 0; n < 5; ++n) CHECK(s.energies[n] == doctest::Approx(2.0 * n + 1.0).epsilon(1e-8));
  check_sturm(s);
  CHECK(s.grid_n > 0);
  CHECK(s.x_lo < -3.0);
  CHECK(s.x_hi > 3.0);
  const Spectrum few = numerov_bound_states(oscillator(1.0), {-1.0, 10.0}, 2);
  CHECK(few.energies.size() == 2);
}

TEST_CASE("Poschl-Teller with lambda = 3") {
  const SpecializationParams p{0.0, -6.0, 0.0, 0.5, 0.0};
  const Spectrum c = closed_form_spectrum(Specialization::PoschlTeller, p);
  REQUIRE(c.energies.size() == 2);
  CHECK(c.energies[0] == doctest::Approx(-4.0).epsilon(1e-15));
  CHECK(c.energies[1] == doctest::Approx(-1.0).epsilon(1e-15));
  const CrossValidation cv = cross_validate(Specialization::PoschlTeller, p);
  REQUIRE(cv.numerov.energies.size() == 2);
  CHECK(cv.max_rel_err <= 1e-6);
  check_sturm(cv.numerov);
  // The same levels from sech^2 written out directly on a wide box.
  const auto V = [](double x) { return -6.0 / std::pow(std::cosh(x), 2); };
  const Spectrum direct = numerov_bound_states(V, -20.0, 20.0, {-10.0, 0.0}, 5);
  REQUIRE(direct.energies.size() == 2);
  CHECK(direct.energies[0] == doctest::Approx(-4.0).epsilon(1e-8));
  CHECK(direct.energies[1] == doctest::Approx(-1.0).epsilon(1e-8));
}

TEST_CASE("empty windows") {
  const auto zero = [](double) { return 0.0; };
  CHECK(numerov_bound_states(zero, -10.0, 10.0, {-1.0, 0.0}, 5).energies.empty());
  CHECK(numerov_bound_states(oscillator(1.0), {-1.0, 0.5}, 5).energies.empty());
  CHECK_THROWS_AS(closed_form_spectrum(Specialization::Harmonic, {0.0, 0.0, -1.0, 1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(closed_form_spectrum(Specialization::Morse, {0.0, 1.0, 1.0, 1.0, 0.0}), DomainError);
}

TEST_CASE("hard-wall box") {
  // psi'' + E psi = 0 on [0, pi]: E = (n + 1)^2.
  const auto zero = [](double) { return 0.0; };
  const Spectrum s = numerov_bound_states(zero, 0.0, M_PI, {0.0, 30.0}, 4);
  REQUIRE(s.energies.size() == 4);
  for (int n = 0; n < 4; ++n) CHECK(s.energies[n] == doctest::Approx((n + 1.0) * (n + 1.0)).epsilon(1e-8));
  check_sturm(s);
}

TEST_CASE("dual oracle for every specialization") {
  const std::vector<std::pair<Specialization, SpecializationParams>> cases = {
      {Specialization::Eckart, {0.0, 50.0, 2.0, 1.0, 0.0}},
      {Specialization::PoschlTeller, {1.0, -12.0, 0.0, 0.7, 0.3}},
      {Specialization::Morse, {0.0, -72.0, 36.0, 1.0, 0.0}},
      {Specialization::Harmonic, {0.5, 0.0, 2.0, 1.3, -0.2}},
      {Specialization::Kratzer, {0.0, -10.0, 2.0, 1.0, 0.0}},
  };
  for (const auto& [name, p] : cases) {
    const CrossValidation cv = cross_validate(name, p);
    CHECK_MESSAGE(cv.max_rel_err <= 1e-6, to_string(name));
    CHECK(cv.numerov.energies.size() == cv.oracle.energies.size());
    CHECK_FALSE(cv.oracle.energies.empty());
    check_sturm(cv.numerov);
    const auto j = to_json(cv);
    CHECK(j.contains("max_rel_err"));
  }
}

TEST_CASE("Morse ladder length") {
  for (double beta : {1.3, 2.8, 3.4, 4.9}) {
    // V = D (e^{2t} - 2 e^t) with sqrt(D) sigma = beta.
    const double sigma = 0.8, D = beta * beta / (sigma * sigma);
    const SpecializationParams p{0.0, -2.0 * D, D, sigma, 0.0};
    const int expected = static_cast<int>(std::floor(std::sqrt(D) * sigma - 0.5)) + 1;
    const Spectrum c = closed_form_spectrum(Specialization::Morse, p, 50);
    CHECK(static_cast<int>(c.energies.size()) == expected);
    // Window top halfway between the last level and the threshold.
    const Spectrum n =
        numerov_bound_states(specialization_spec(Specialization::Morse, p), {-2.0 * D, 0.5 * c.energies.back()}, 50);
    CHECK(static_cast<int>(n.energies.size()) == expected);
  }
}

TEST_CASE("grid convergence") {
  const auto spec = specialization_spec(Specialization::Morse, {0.0, -72.0, 36.0, 1.0, 0.0});
  NumerovOptions coarse;
  NumerovOptions fine;
  fine.grid_n = 2 * coarse.grid_n;
  const Spectrum a = numerov_bound_states(spec, {-100.0, -1.0}, 5, coarse);
  const Spectrum b = numerov_bound_states(spec, {-100.0, -1.0}, 5, fine);
  REQUIRE(a.energies.size() == b.energies.size());
  for (std::size_t i = 0; i < a.energies.size(); ++i)
    CHECK(std::abs(a.energies[i] - b.energies[i]) <= 1e-8 * std::abs(b.energies[i]));

  SUBCASE("fourth-order error ratio under step halving") {
    const auto osc = oscillator(1.0);
    auto err = [&](int n) {
      NumerovOptions o;
      o.grid_n = n;
      o.x_lo = -9.0;
      o.x_hi = 9.0;
      const Spectrum s = numerov_bound_states(osc, {0.0, 6.0}, 3, o);
      REQUIRE(s.energies.size() == 3);
      return std::abs(s.energies[2] - 5.0);
    };
    const double e1 = err(1001), e2 = err(2001), e3 = err(4001);
    for (double ratio : {e2 / e1, e3 / e2}) {
      CHECK(ratio >= 1.0 / 64.0);
      CHECK(ratio <= 1.0 / 4.0);
    }
  }
  SUBCASE("Richardson extrapolation improves a coarse grid") {
    NumerovOptions o;
    o.grid_n = 2000;
    const Spectrum plain = numerov_bound_states(spec, {-100.0, -1.0}, 5, o);
    o.richardson = true;
    const Spectrum rich = numerov_bound_states(spec, {-100.0, -1.0}, 5, o);
    const Spectrum exact = closed_form_spectrum(Specialization::Morse, {0.0, -72.0, 36.0, 1.0, 0.0});
    for (std::size_t i = 0; i < exact.energies.size(); ++i)
      CHECK(std::abs(rich.energies[i] - exact.energies[i]) < std::abs(plain.energies[i] - exact.energies[i]));
  }
}

TEST_CASE("serial and parallel level solves agree") {
  const auto spec = specialization_spec(Specialization::Morse, {0.0, -72.0, 36.0, 1.0, 0.0});
  NumerovOptions s;
  s.parallel = false;
  const Spectrum a = numerov_bound_states(spec, {-100.0, -1.0}, 5, s);
  const Spectrum b = numerov_bound_states(spec, {-100.0, -1.0}, 5);
  CHECK(a.energies == b.energies);
}

TEST_CASE("specialization parameters") {
  const SpecializationParams p{0.3, -4.0, 2.0, 0.9, 0.1};
  for (auto name : {Specialization::Eckart, Specialization::Morse, Specialization::Kratzer}) {
    const SpecializationParams back = specialization_params(name, specialization_spec(name, p));
    CHECK(back.v0 == doctest::Approx(p.v0));
    CHECK(back.a == doctest::Approx(p.a));
    CHECK(back.b == doctest::Approx(p.b));
    CHECK(back.sigma == p.sigma);
    CHECK(back.x0 == p.x0);
  }
  CHECK(specialization_params(Specialization::Harmonic, specialization_spec(Specialization::Harmonic, p)).b ==
        doctest::Approx(2.0));
  CHECK(specialization_params(Specialization::PoschlTeller, specialization_spec(Specialization::PoschlTeller, p)).a ==
        doctest::Approx(-4.0));
  // Morse lives in class (1,0), not (1/2,1/2).
  CHECK_THROWS_AS(specialization_params(Specialization::Morse, specialization_spec(Specialization::PoschlTeller, p)),
                  CatalogError);
  // A label outside the Morse slots.
  const auto extra = PotentialSpec::from_table(specialization_spec(Specialization::Morse, p).info,
                                               {0.0, -4.0, 2.0, 1.0, 0.0}, 1.0, 0.0);
  CHECK_THROWS_AS(specialization_params(Specialization::Morse, extra), CatalogError);
  CHECK(parse_specialization("poschl-teller") == Specialization::PoschlTeller);
  CHECK_THROWS(parse_specialization("quartic"));
}
