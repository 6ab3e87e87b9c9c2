#include <doctest.h>

#include <cmath>

#include "natanzon/errors.hpp"
#include "natanzon/kernels.hpp"

using namespace natanzon;

namespace {

PotentialSpec lambert_spec() {
  const auto info = class_info(EquationFamily::ConfluentHeun, {HalfInt(1), HalfInt(-1)});
  return PotentialSpec::from_table(info, {0.5, -1.0, 2.0, 0.3, -0.7}, 1.2, -1.2);
}

bool same(double a, double b) { return a == b || (std::isnan(a) && std::isnan(b)); }

}  // namespace

TEST_CASE("parallel profile equals the serial reference") {
  const auto spec = lambert_spec();
  const auto [lo, hi] = default_profile_range(spec);
  CHECK(lo < hi);
  const auto a = profile_serial(spec, lo, hi, 5001);
  const auto b = profile_parallel(spec, lo, hi, 5001);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].x == b[i].x);
    CHECK(same(a[i].z, b[i].z));
    CHECK(same(a[i].V, b[i].V));
  }
  CHECK(a.front().x == lo);
  CHECK(a.back().x == hi);
}

TEST_CASE("profile outside the image throws in both versions") {
  const auto info = class_info(EquationFamily::DoubleConfluentHeun, {HalfInt::from_doubled(1), HalfInt(0)});
  const auto spec = PotentialSpec::from_table(info, {1, 0, 0, 0, 0}, 1.0, 0.0);
  CHECK_THROWS_AS(profile_serial(spec, -1.0, 1.0, 101), DomainError);
  CHECK_THROWS_AS(profile_parallel(spec, -1.0, 1.0, 101), DomainError);
}

TEST_CASE("verification plan is deterministic") {
  const auto classes = verification_classes();
  const auto p1 = verification_plan(classes, 11, 2);
  const auto p2 = verification_plan(classes, 11, 2);
  REQUIRE(p1.size() == classes.size() * 2 * 3);
  for (std::size_t i = 0; i < p1.size(); ++i) {
    CHECK(p1[i].energy == p2[i].energy);
    CHECK(p1[i].spec.v == p2[i].spec.v);
  }
  CHECK(verification_plan(classes, 12, 2)[0].energy != p1[0].energy);
}

TEST_CASE("parallel verify sweep equals the serial reference") {
  const auto plan = verification_plan(verification_classes(), 3, 1);
  const auto a = verify_sweep_serial(plan, 100);
  const auto b = verify_sweep_parallel(plan, 100);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].error == b[i].error);
    REQUIRE(a[i].records.size() == b[i].records.size());
    for (std::size_t k = 0; k < a[i].records.size(); ++k) {
      CHECK(a[i].records[k].branch == b[i].records[k].branch);
      CHECK(a[i].records[k].residual_identity == b[i].records[k].residual_identity);
      CHECK(a[i].records[k].residual_psi == b[i].records[k].residual_psi);
      CHECK(a[i].records[k].residual_identity <= 1e-9);
      CHECK(a[i].records[k].residual_psi <= 1e-9);
    }
  }
}
