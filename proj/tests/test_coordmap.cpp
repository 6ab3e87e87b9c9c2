#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/lambert_w.hpp>

#include "natanzon/coordmap.hpp"
#include "natanzon/errors.hpp"
#include "natanzon/lambert.hpp"

using namespace natanzon;

namespace {

constexpr auto CHE = EquationFamily::ConfluentHeun;
constexpr double kE = 2.718281828459045;

MapSpec che(int a, int b, double sigma = 1.0, double x0 = 0.0) {
  return MapSpec::make(class_info(CHE, {HalfInt::from_doubled(a), HalfInt::from_doubled(b)}), sigma, x0);
}

// Interior sample range of a branch, finite.
std::pair<double, double> sample_range(const ZInterval& d) {
  double lo = d.lo, hi = d.hi;
  if (!std::isfinite(lo) && !std::isfinite(hi)) return {-6.0, 6.0};
  if (!std::isfinite(lo)) lo = hi - 8.0;
  if (!std::isfinite(hi)) hi = lo + 8.0;
  const double pad = 1e-3 * (hi - lo);
  return {lo + pad, hi - pad};
}

std::vector<MapSpec> all_maps() {
  std::vector<MapSpec> maps;
  for (auto fam : {CHE, EquationFamily::DoubleConfluentHeun, EquationFamily::BiConfluentHeun,
                   EquationFamily::TriConfluentHeun})
    for (const auto& p : enumerate_classes(fam)) {
      maps.push_back(MapSpec::make(class_info(fam, p), 1.3, 0.2));
      maps.push_back(MapSpec::make(class_info(fam, p), -0.7, -0.4));
    }
  return maps;
}

// Distance from z to the nearest finite singular point of the map.
double singular_distance(const MapSpec& m, double z) {
  switch (finite_singularity_count(m.family)) {
    case 2: return std::min(std::abs(z), std::abs(z - 1.0));
    case 1: return std::abs(z);
    default: return 1.0;
  }
}

bool near_singular(const MapSpec& m, double z) {
  return m.family == CHE && (std::abs(z) < 1e-6 || std::abs(z - 1.0) < 1e-6);
}

}  // namespace

TEST_CASE("x_of_z examples") {
  CHECK(x_of_z(che(2, -2, 1.0, -1.0), 1.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(x_of_z(che(2, -2, 2.0, -2.0), 1.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(x_of_z(che(2, 2, 1.0, 0.7), 0.5) == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(x_of_z(che(1, 0, 1.0, 0.0), 4.0) == doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("z_of_x examples") {
  CHECK(z_of_x(che(2, 0, 1.0, 0.3), 0.3) == doctest::Approx(1.0).epsilon(1e-15));
  const MapSpec lw = che(2, -2, 1.0, -1.0);
  CHECK(z_of_x(lw, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  double prev = 1.0;
  for (double x : {1.0, 5.0, 20.0, 100.0, 600.0}) {
    const double z = z_of_x(lw, x);
    CHECK(z < prev);
    CHECK(z > 0.0);
    prev = z;
  }
  CHECK(z_of_x(lw, 600.0) < 1e-250);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(1.0, 10.0);
  const MapSpec m = che(2, -1, 0.8, 0.1);
  for (int k = 0; k < 50; ++k) {
    const double z = u(rng);
    CHECK(std::abs(z_of_x(m, x_of_z(m, z)) - z) <= 1e-12 * z);
  }
}

TEST_CASE("rho examples") {
  CHECK(rho(che(0, 0, 2.0), 0.3) == doctest::Approx(0.5));
  CHECK(rho(che(2, 0), 3.0) == doctest::Approx(3.0));
  CHECK(rho(che(2, -2), 0.5) == doctest::Approx(-1.0));
}

TEST_CASE("schwarzian examples") {
  for (double z : {-3.0, 0.2, 4.0}) CHECK(schwarzian(che(0, 0, 1.7), z) == doctest::Approx(0.0));
  for (double z : {0.01, 1.0, 7.0}) CHECK(schwarzian(che(2, 0), z) == doctest::Approx(-0.5).epsilon(1e-14));
}

TEST_CASE("round trip z -> x -> z for every class") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const MapSpec& m : all_maps()) {
    const auto [lo, hi] = sample_range(m.branch);
    for (int k = 0; k < 100; ++k) {
      const double z = lo + (hi - lo) * u(rng);
      if (near_singular(m, z)) continue;
      const double back = z_of_x(m, x_of_z(m, z));
      CHECK_MESSAGE(std::abs(back - z) <= 1e-12 * std::max(1.0, std::abs(z)),
                    to_string(m.family), " ", m.exponents.str(), " z=", z, " back=", back);
    }
  }
}

TEST_CASE("x_of_z differences match quadrature of 1/rho") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const MapSpec& m : all_maps()) {
    const auto [lo, hi] = sample_range(m.branch);
    for (int k = 0; k < 10; ++k) {
      double z1 = lo + (hi - lo) * u(rng), z2 = lo + (hi - lo) * u(rng);
      // Keep both points on one side of any interior singular point.
      if (m.family == CHE && ((z1 < 0) != (z2 < 0) || (z1 < 1) != (z2 < 1))) continue;
      if (near_singular(m, z1) || near_singular(m, z2)) continue;
      const double q = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
          [&](double z) { return 1.0 / rho(m, z); }, z1, z2, 15, 1e-14);
      const double d = x_of_z(m, z2) - x_of_z(m, z1);
      CHECK_MESSAGE(std::abs(d - q) <= 1e-10 * (1.0 + std::abs(q)), m.exponents.str(), " ", z1, " ", z2);
    }
  }
}

TEST_CASE("rho matches the derivative of z_of_x") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (const MapSpec& m : all_maps()) {
    const auto [lo, hi] = sample_range(m.branch);
    for (int k = 0; k < 10; ++k) {
      const double z = lo + (hi - lo) * u(rng);
      if (near_singular(m, z)) continue;
      const double x = x_of_z(m, z);
      const double r = rho(m, z);
      const double dx = 1e-4 * singular_distance(m, z) / std::abs(r);
      const XRange img = x_image(m);
      if (x - 2 * dx <= img.lo || x + 2 * dx >= img.hi) continue;
      const double d = (z_of_x(m, x - 2 * dx) - 8 * z_of_x(m, x - dx) + 8 * z_of_x(m, x + dx) -
                        z_of_x(m, x + 2 * dx)) /
                       (12 * dx);
      CHECK_MESSAGE(std::abs(d - r) <= 1e-6 * std::abs(r), m.exponents.str(), " z=", z);
    }
  }
}

TEST_CASE("schwarzian matches finite differences of z(x)") {
  // Seventh-order stencil values of z(x); {z,x} = z'''/z' - 3/2 (z''/z')^2.
  auto fd_schwarzian = [](const MapSpec& m, double x, double h) {
    double f[7];
    for (int i = -3; i <= 3; ++i) f[i + 3] = z_of_x(m, x + i * h);
    const double d1 = (-f[0] + 9 * f[1] - 45 * f[2] + 45 * f[4] - 9 * f[5] + f[6]) / (60 * h);
    const double d2 = (2 * f[0] - 27 * f[1] + 270 * f[2] - 490 * f[3] + 270 * f[4] - 27 * f[5] + 2 * f[6]) /
                      (180 * h * h);
    const double d3 = (f[0] - 8 * f[1] + 13 * f[2] - 13 * f[4] + 8 * f[5] - f[6]) / (8 * h * h * h);
    return d3 / d1 - 1.5 * (d2 / d1) * (d2 / d1);
  };
  SUBCASE("class (1,1)") {
    const MapSpec m = che(2, 2);
    const double x = x_of_z(m, 0.5);
    CHECK(schwarzian(m, 0.5) == doctest::Approx(fd_schwarzian(m, x, 1e-2)).epsilon(1e-6));
  }
  SUBCASE("Lambert class (1,-1)") {
    const MapSpec m = che(2, -2, 1.0, -1.0);
    for (double z : {0.2, 0.5, 0.8}) {
      const double x = x_of_z(m, z);
      const double h = 2e-3 * std::min(z, 1.0 - z) / std::abs(rho(m, z));
      CHECK(schwarzian(m, z) == doctest::Approx(fd_schwarzian(m, x, h)).epsilon(1e-6));
    }
  }
  SUBCASE("every class") {
    for (const MapSpec& m : all_maps()) {
      const auto [lo, hi] = sample_range(m.branch);
      for (double frac : {0.3, 0.6}) {
        const double z = lo + (hi - lo) * frac;
        if (near_singular(m, z)) continue;
        const double x = x_of_z(m, z);
        const double r = rho(m, z);
        const double dist = singular_distance(m, z);
        const double h = 2e-3 * dist / std::abs(r);
        const XRange img = x_image(m);
        if (x - 3 * h <= img.lo || x + 3 * h >= img.hi) continue;
        const double s = schwarzian(m, z);
        CHECK_MESSAGE(std::abs(s - fd_schwarzian(m, x, h)) <= 1e-6 * (std::abs(s) + r * r / (dist * dist)),
                      to_string(m.family), " ", m.exponents.str(), " z=", z);
      }
    }
  }
}

TEST_CASE("x is monotone on the branch, with the sign of sigma times rho") {
  for (const MapSpec& m : all_maps()) {
    const auto [lo, hi] = sample_range(m.branch);
    double prev = x_of_z(m, lo);
    const bool up = rho(m, 0.5 * (lo + hi)) > 0;
    for (int k = 1; k <= 40; ++k) {
      const double z = lo + (hi - lo) * k / 40.0;
      if (near_singular(m, z)) continue;
      if (m.family == CHE && ((lo < 0 && z > 0) || (lo < 1 && z > 1))) continue;
      const double x = x_of_z(m, z);
      CHECK((up ? x > prev : x < prev));
      prev = x;
    }
  }
}

TEST_CASE("class (1/2,-1/2) map increases in z on z > 1") {
  const MapSpec m = che(1, -1);
  CHECK(x_of_z(m, 1.0 + 1e-6) < x_of_z(m, 1.5));
  CHECK(x_of_z(m, 1.5) < x_of_z(m, 3.0));
  CHECK(x_of_z(m, 1.0 + 1e-12) >= 0.0);
  CHECK(x_of_z(m, 1.0 + 1e-12) < 1e-15);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(x_of_z(che(2, -2), 1.5), DomainError);
  CHECK_THROWS_AS(x_of_z(che(2, 0), -1.0), DomainError);
  CHECK_THROWS_AS(z_of_x(che(2, -2, 1.0, -1.0), -0.5), DomainError);
  CHECK_THROWS_AS(rho(che(2, 2), 2.0), DomainError);
}

TEST_CASE("Lambert W examples") {
  CHECK(lambert_w0(0.0) == 0.0);
  CHECK(lambert_w0(-1.0 / kE) == doctest::Approx(-1.0).epsilon(1e-8));
  CHECK(lambert_wm1(-1.0 / kE) == doctest::Approx(-1.0).epsilon(1e-8));
  CHECK(lambert_w0(1.0) == doctest::Approx(0.5671432904097838).epsilon(1e-15));
  CHECK_THROWS_AS(lambert_w0(-0.4), DomainError);
  CHECK_THROWS_AS(lambert_wm1(-0.4), DomainError);
  CHECK_THROWS_AS(lambert_wm1(0.1), DomainError);
  CHECK(lambert_w0_plus_one(0.0) == 0.0);
}

TEST_CASE("Lambert W residual on log-spaced grids") {
  auto check_branch = [](double (*w)(double), double y) {
    const double v = w(y);
    CHECK_MESSAGE(std::abs(v * std::exp(v) - y) <= 1e-14 * (1.0 + std::abs(y)), "y=", y);
  };
  for (double e = -300; e <= 12; e += 0.25) {
    check_branch(lambert_w0, std::pow(10.0, e));
    check_branch(lambert_w0, -std::pow(10.0, e) / kE * (e < 0 ? 1.0 : 0.0));
  }
  for (double e = -300; e <= 0; e += 0.25) {
    const double y = -std::pow(10.0, e) / kE;
    check_branch(lambert_wm1, y);
  }
}

TEST_CASE("Lambert W agrees with an independent implementation") {
  for (double e = -12; e <= 12; e += 0.1) {
    const double y = std::pow(10.0, e);
    CHECK(lambert_w0(y) == doctest::Approx(boost::math::lambert_w0(y)).epsilon(4e-15));
  }
  for (double t = 1e-12; t < 1.0; t *= 1.7) {
    const double y = -t / kE;
    CHECK(lambert_w0(y) == doctest::Approx(boost::math::lambert_w0(y)).epsilon(1e-13));
    CHECK(lambert_wm1(y) == doctest::Approx(boost::math::lambert_wm1(y)).epsilon(1e-13));
  }
  CHECK(lambert_w0(-1.0 / kE) >= -1.0);
  CHECK(lambert_wm1(-1.0 / kE) <= -1.0);
}

TEST_CASE("W0 + 1 near the branch point keeps relative accuracy") {
  for (double delta : {1e-30, 1e-20, 1e-12, 1e-6, 1e-3}) {
    const double w1 = lambert_w0_plus_one(delta);
    // w = w1 - 1 satisfies e*w*e^w + 1 = delta; to first orders w1^2/2 - w1^3/3 ~ delta.
    const double p = std::sqrt(2.0 * delta);
    const double series = p - p * p / 3.0 + 11.0 * p * p * p / 72.0;
    CHECK(w1 == doctest::Approx(series).epsilon(std::max(1e-14, p * p * p)));
  }
}
