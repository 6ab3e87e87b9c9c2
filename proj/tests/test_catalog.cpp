#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <set>

#include "natanzon/catalog.hpp"
#include "natanzon/coordmap.hpp"
#include "natanzon/errors.hpp"

using namespace natanzon;

namespace {

HalfInt h(int doubled) { return HalfInt::from_doubled(doubled); }

constexpr auto CHE = EquationFamily::ConfluentHeun;
constexpr auto DHE = EquationFamily::DoubleConfluentHeun;
constexpr auto BHE = EquationFamily::BiConfluentHeun;
constexpr auto THE = EquationFamily::TriConfluentHeun;

}  // namespace

TEST_CASE("half-integers parse and compare exactly") {
  CHECK(HalfInt::parse("1/2").doubled() == 1);
  CHECK(HalfInt::parse("-1/2").doubled() == -1);
  CHECK(HalfInt::parse("0.5").doubled() == 1);
  CHECK(HalfInt::parse("-1.5").doubled() == -3);
  CHECK(HalfInt::parse("2").doubled() == 4);
  CHECK(HalfInt::parse("-3/2").value() == -1.5);
  CHECK_THROWS_AS(HalfInt::parse("1/3"), DomainError);
  CHECK_THROWS_AS(HalfInt::parse("0.25"), DomainError);
  CHECK_THROWS_AS(HalfInt::parse("x"), DomainError);
  CHECK((h(1) + h(1)) == HalfInt(1));
  CHECK(h(-1) < h(0));
  CHECK(h(3).str() == "3/2");
  CHECK(h(-1).str() == "-1/2");
  for (int d = -9; d <= 9; ++d) CHECK(HalfInt::parse(h(d).str()) == h(d));
}

TEST_CASE("enumeration counts") {
  const auto che = enumerate_classes(CHE);
  CHECK(che.size() == 15);
  std::map<int, int> per_m1;
  for (const auto& p : che) per_m1[p.m1.doubled()]++;
  CHECK(per_m1[2] == 5);
  CHECK(per_m1[1] == 4);
  CHECK(per_m1[0] == 3);
  CHECK(per_m1[-1] == 2);
  CHECK(per_m1[-2] == 1);

  CHECK(enumerate_classes(DHE).size() == 5);
  CHECK(independent_representatives(DHE).size() == 3);
  const auto bhe = enumerate_classes(BHE);
  REQUIRE(bhe.size() == 5);
  std::vector<int> m1s;
  for (const auto& p : bhe) m1s.push_back(p.m1.doubled());
  CHECK(m1s == std::vector<int>{-2, -1, 0, 1, 2});
  CHECK(enumerate_classes(THE).size() == 1);
  CHECK(independent_representatives(BHE).size() == 5);
  CHECK(independent_representatives(THE).size() == 1);
}

TEST_CASE("enumeration is sorted and every pair satisfies the constraints") {
  for (auto fam : kAllFamilies) {
    const auto pairs = enumerate_classes(fam);
    CHECK(std::is_sorted(pairs.begin(), pairs.end()));
  }
  for (const auto& p : enumerate_classes(CHE)) {
    CHECK(p.m1 <= HalfInt(1));
    CHECK(p.m2 <= HalfInt(1));
    CHECK((p.m1 + p.m2) >= HalfInt(0));
  }
  for (const auto& p : enumerate_classes(DHE)) {
    const int d = 4 - p.m1.doubled();
    CHECK(d >= 0);
    CHECK(d <= 4);
  }
}

TEST_CASE("canonicalization gives nine representatives, three diagonal") {
  std::set<ExponentPair> reps;
  for (const auto& p : enumerate_classes(CHE)) {
    const auto c = canonical_pair(CHE, p);
    CHECK(canonical_pair(CHE, c) == c);
    CHECK(c.m1 >= c.m2);
    reps.insert(c);
  }
  CHECK(reps.size() == 9);
  int diagonal = 0;
  for (const auto& r : reps) diagonal += r.m1 == r.m2;
  CHECK(diagonal == 3);
  const auto ind = independent_representatives(CHE);
  CHECK(ind.size() == 9);
  int off_orbits = 0;
  for (const auto& r : reps)
    if (!(r.m1 == r.m2)) ++off_orbits;
  CHECK(off_orbits == 6);
}

TEST_CASE("mirror of mirror is self") {
  for (const auto& p : enumerate_classes(CHE)) {
    const auto info = class_info(CHE, p);
    REQUIRE(info.mirror);
    const auto back = class_info(CHE, *info.mirror);
    REQUIRE(back.mirror);
    CHECK(*back.mirror == p);
  }
  CHECK_FALSE(class_info(BHE, {h(1), h(0)}).mirror);
  CHECK_FALSE(class_info(THE, {}).mirror);
}

TEST_CASE("subfamily tags and map kinds of the nine representatives") {
  using S = Subfamily;
  auto subs = [](int a, int b) { return class_info(CHE, {h(a), h(b)}).subfamilies; };
  CHECK(subs(0, 0) == std::vector<S>{S::Kummer1F1});
  CHECK(subs(1, 0) == std::vector<S>{S::Kummer1F1});
  CHECK(subs(1, 1) == std::vector<S>{S::Gauss2F1});
  const auto s10 = class_info(CHE, {HalfInt(1), HalfInt(0)});
  CHECK(s10.has_subfamily(S::Gauss2F1));
  CHECK(s10.has_subfamily(S::Kummer1F1));
  CHECK(subs(2, 1) == std::vector<S>{S::Gauss2F1});
  CHECK(subs(2, 2) == std::vector<S>{S::Gauss2F1});
  CHECK(subs(1, -1).empty());
  CHECK(subs(2, -2).empty());
  CHECK(subs(2, -1).empty());
  for (const auto& p : enumerate_classes(CHE)) {
    const auto info = class_info(CHE, p);
    const bool lw = canonical_pair(CHE, p) == ExponentPair{HalfInt(1), HalfInt(-1)};
    CHECK((info.map_kind == MapKind::LambertW) == lw);
  }
}

TEST_CASE("class domains") {
  const double inf = std::numeric_limits<double>::infinity();
  auto dom = [](int a, int b) { return class_info(CHE, {h(a), h(b)}).z_domain; };
  CHECK(dom(0, 0) == ZInterval{-inf, inf, true, true});
  CHECK(dom(2, 2) == ZInterval{0, 1, true, true});
  CHECK(dom(2, -2) == ZInterval{0, 1, true, false});
  CHECK(dom(2, 0) == ZInterval{0, inf, true, true});
  CHECK(dom(1, 0) == ZInterval{0, inf, true, true});
  CHECK(dom(1, 1).lo == 1.0);
  CHECK(dom(1, -1).lo == 1.0);
  CHECK(dom(2, -1).lo == 1.0);
  CHECK(dom(2, 1).lo == 1.0);
  // Mirror domain is the reflection.
  CHECK(dom(-2, 2) == dom(2, -2).reflected());
}

TEST_CASE("dx/dz is finite, real and nonzero on every domain interior") {
  std::mt19937_64 rng(11);
  for (auto fam : {CHE, DHE, BHE, THE})
    for (const auto& p : enumerate_classes(fam)) {
      const auto info = class_info(fam, p);
      const MapSpec map = MapSpec::make(info, 1.3, 0.0);
      const double lo = std::isfinite(info.z_domain.lo) ? info.z_domain.lo : -20.0;
      const double hi = std::isfinite(info.z_domain.hi) ? info.z_domain.hi : lo + 20.0;
      std::uniform_real_distribution<double> u(0.0, 1.0);
      int sign = 0;
      for (int k = 0; k < 50; ++k) {
        const double z = lo + (hi - lo) * (0.001 + 0.998 * u(rng));
        if (fam == CHE && (std::abs(z) < 1e-9 || std::abs(z - 1.0) < 1e-9)) continue;
        const double r = rho(map, z);
        CHECK(std::isfinite(r));
        CHECK(r != 0.0);
        const int s = r > 0 ? 1 : -1;
        if (sign == 0) sign = s;
        CHECK(s == sign);
      }
    }
}

TEST_CASE("errors and parsing") {
  CHECK_THROWS_AS(class_info(CHE, {HalfInt(2), HalfInt(0)}), CatalogError);
  CHECK_THROWS_AS(class_info(CHE, {HalfInt(-1), HalfInt(0)}), CatalogError);
  CHECK_THROWS_AS(class_info(BHE, {h(3), h(0)}), CatalogError);
  CHECK_THROWS_AS(parse_family("quartic"), CatalogError);
  for (auto f : kAllFamilies) CHECK(parse_family(to_string(f)) == f);
  CHECK(finite_singularity_count(EquationFamily::Hypergeometric) == 2);
  CHECK(finite_singularity_count(EquationFamily::ConfluentHypergeometric) == 1);
  CHECK(finite_singularity_count(CHE) == 2);
  CHECK(finite_singularity_count(DHE) == 1);
  CHECK(finite_singularity_count(BHE) == 1);
  CHECK(finite_singularity_count(THE) == 0);
}

TEST_CASE("dependent double-confluent classes point at an independent one") {
  for (const auto& p : enumerate_classes(DHE)) {
    const auto info = class_info(DHE, p);
    CHECK(info.independent == (p.m1 <= HalfInt(1)));
    if (!info.independent) {
      REQUIRE(info.equivalent_to);
      CHECK(class_info(DHE, *info.equivalent_to).independent);
    }
  }
}

TEST_CASE("class JSON") {
  const auto j = to_json(class_info(CHE, {HalfInt(1), HalfInt(-1)}));
  CHECK(j["family"] == "confluent-heun");
  CHECK(j["m1_doubled"] == 2);
  CHECK(j["m2_doubled"] == -2);
  CHECK(j["map_kind"] == "lambert-w");
  CHECK(j["z_domain"][0] == 0.0);
  CHECK(j["z_domain"][3] == false);
  CHECK(to_json(class_info(CHE, {HalfInt(0), HalfInt(0)}))["z_domain"][0] == "-inf");
}
