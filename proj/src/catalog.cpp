#include "natanzon/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "natanzon/errors.hpp"

namespace natanzon {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

HalfInt half(int doubled) { return HalfInt::from_doubled(doubled); }

bool two_singularities(EquationFamily f) { return finite_singularity_count(f) == 2; }

bool admissible(EquationFamily family, ExponentPair p) {
  const int a = p.m1.doubled();
  const int b = p.m2.doubled();
  switch (family) {
    case EquationFamily::Hypergeometric:
      return a <= 2 && b <= 2 && a + b >= 2;
    case EquationFamily::ConfluentHeun:
      return a <= 2 && b <= 2 && a + b >= 0;
    case EquationFamily::ConfluentHypergeometric:
      return b == 0 && a >= 0 && a <= 2;
    case EquationFamily::DoubleConfluentHeun:
      return b == 0 && 4 - a >= 0 && 4 - a <= 4;
    case EquationFamily::BiConfluentHeun:
      return b == 0 && 2 - a >= 0 && 2 - a <= 4;
    case EquationFamily::TriConfluentHeun:
      return a == 0 && b == 0;
  }
  return false;
}

// Canonical z-interval of the confluent Heun representatives (m1 >= m2),
// keyed by doubled exponents.
ZInterval representative_domain(int a, int b) {
  static const std::map<std::pair<int, int>, ZInterval> table = {
      {{0, 0}, {-kInf, kInf, true, true}},
      {{1, -1}, {1.0, kInf, true, true}},
      {{1, 0}, {0.0, kInf, true, true}},
      {{1, 1}, {1.0, kInf, true, true}},
      {{2, -2}, {0.0, 1.0, true, false}},
      {{2, -1}, {1.0, kInf, true, true}},
      {{2, 0}, {0.0, kInf, true, true}},
      {{2, 1}, {1.0, kInf, true, true}},
      {{2, 2}, {0.0, 1.0, true, true}},
  };
  auto it = table.find({a, b});
  if (it == table.end()) throw CatalogError("no representative domain for doubled pair");
  return it->second;
}

std::vector<Subfamily> representative_subfamilies(int a, int b) {
  using S = Subfamily;
  if (a == 0 && b == 0) return {S::Kummer1F1};
  if (a == 1 && b == 0) return {S::Kummer1F1};
  if (a == 1 && b == 1) return {S::Gauss2F1};
  if (a == 2 && b == 0) return {S::Gauss2F1, S::Kummer1F1};
  if (a == 2 && b == 1) return {S::Gauss2F1};
  if (a == 2 && b == 2) return {S::Gauss2F1};
  return {};
}

MapKind representative_map_kind(int a, int b) {
  if (a == 2 && b == -2) return MapKind::LambertW;
  if ((a == 1 && b == -1) || (a == 2 && b == -1)) return MapKind::NumericInverse;
  return MapKind::ClosedForm;
}

}  // namespace

std::string_view to_string(EquationFamily family) {
  switch (family) {
    case EquationFamily::Hypergeometric: return "hypergeometric";
    case EquationFamily::ConfluentHypergeometric: return "confluent-hypergeometric";
    case EquationFamily::ConfluentHeun: return "confluent-heun";
    case EquationFamily::DoubleConfluentHeun: return "double-confluent-heun";
    case EquationFamily::BiConfluentHeun: return "bi-confluent-heun";
    case EquationFamily::TriConfluentHeun: return "tri-confluent-heun";
  }
  return "?";
}

EquationFamily parse_family(std::string_view name) {
  for (auto f : kAllFamilies) {
    if (to_string(f) == name) return f;
  }
  // Short aliases.
  if (name == "2f1" || name == "gauss") return EquationFamily::Hypergeometric;
  if (name == "1f1" || name == "kummer") return EquationFamily::ConfluentHypergeometric;
  if (name == "che" || name == "heun-c") return EquationFamily::ConfluentHeun;
  if (name == "dhe") return EquationFamily::DoubleConfluentHeun;
  if (name == "bhe") return EquationFamily::BiConfluentHeun;
  if (name == "the") return EquationFamily::TriConfluentHeun;
  throw CatalogError("unknown equation family '" + std::string(name) + "'");
}

int finite_singularity_count(EquationFamily family) {
  switch (family) {
    case EquationFamily::Hypergeometric: return 2;
    case EquationFamily::ConfluentHypergeometric: return 1;
    case EquationFamily::ConfluentHeun: return 2;
    case EquationFamily::DoubleConfluentHeun: return 1;
    case EquationFamily::BiConfluentHeun: return 1;
    case EquationFamily::TriConfluentHeun: return 0;
  }
  return 0;
}

bool is_heun_family(EquationFamily family) {
  return family == EquationFamily::ConfluentHeun || family == EquationFamily::DoubleConfluentHeun ||
         family == EquationFamily::BiConfluentHeun || family == EquationFamily::TriConfluentHeun;
}

std::string ExponentPair::str() const { return "(" + m1.str() + ", " + m2.str() + ")"; }

bool ZInterval::contains(double z) const {
  const bool above = lo_open ? z > lo : z >= lo;
  const bool below = hi_open ? z < hi : z <= hi;
  return above && below;
}

ZInterval ZInterval::reflected() const { return {1.0 - hi, 1.0 - lo, hi_open, lo_open}; }

std::string_view to_string(MapKind kind) {
  switch (kind) {
    case MapKind::ClosedForm: return "closed-form";
    case MapKind::LambertW: return "lambert-w";
    case MapKind::NumericInverse: return "numeric-inverse";
  }
  return "?";
}

std::string_view to_string(Subfamily s) {
  return s == Subfamily::Gauss2F1 ? "2F1" : "1F1";
}

bool ClassInfo::has_subfamily(Subfamily s) const {
  return std::find(subfamilies.begin(), subfamilies.end(), s) != subfamilies.end();
}

std::vector<ExponentPair> enumerate_classes(EquationFamily family) {
  std::vector<ExponentPair> out;
  for (int a = -8; a <= 8; ++a) {
    for (int b = -8; b <= 8; ++b) {
      ExponentPair p{half(a), half(b)};
      if (admissible(family, p)) out.push_back(p);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

ExponentPair canonical_pair(EquationFamily family, ExponentPair pair) {
  if (two_singularities(family) && pair.m1 < pair.m2) return {pair.m2, pair.m1};
  return pair;
}

ClassInfo class_info(EquationFamily family, ExponentPair pair) {
  if (!admissible(family, pair)) {
    throw CatalogError("exponent pair " + pair.str() + " is not admissible for family " +
                       std::string(to_string(family)));
  }
  ClassInfo info;
  info.family = family;
  info.exponents = pair;

  if (two_singularities(family)) {
    const ExponentPair rep = canonical_pair(family, pair);
    const bool is_rep = rep == pair;
    const int a = rep.m1.doubled();
    const int b = rep.m2.doubled();
    info.mirror = ExponentPair{pair.m2, pair.m1};
    info.independent = is_rep;
    info.z_domain = is_rep ? representative_domain(a, b) : representative_domain(a, b).reflected();
    info.map_kind = representative_map_kind(a, b);
    if (family == EquationFamily::Hypergeometric) {
      info.subfamilies = {Subfamily::Gauss2F1};
    } else {
      info.subfamilies = representative_subfamilies(a, b);
    }
    return info;
  }

  const int a = pair.m1.doubled();
  switch (family) {
    case EquationFamily::ConfluentHypergeometric:
      info.subfamilies = {Subfamily::Kummer1F1};
      info.z_domain = a == 0 ? ZInterval{-kInf, kInf, true, true} : ZInterval{0.0, kInf, true, true};
      break;
    case EquationFamily::DoubleConfluentHeun:
      info.z_domain = {0.0, kInf, true, true};
      if (a > 2) {
        info.independent = false;
        info.equivalent_to = ExponentPair{half(4 - a), half(0)};
      }
      break;
    case EquationFamily::BiConfluentHeun:
      info.z_domain = {0.0, kInf, true, true};
      break;
    case EquationFamily::TriConfluentHeun:
      info.z_domain = {-kInf, kInf, true, true};
      break;
    default:
      break;
  }
  return info;
}

std::vector<ClassInfo> independent_representatives(EquationFamily family) {
  std::vector<ClassInfo> out;
  for (const auto& p : enumerate_classes(family)) {
    ClassInfo info = class_info(family, p);
    if (info.independent) out.push_back(std::move(info));
  }
  return out;
}

std::string potential_formula(const ClassInfo& info) {
  const int a = info.exponents.m1.doubled();
  const int b = info.exponents.m2.doubled();
  switch (info.family) {
    case EquationFamily::ConfluentHeun:
    case EquationFamily::Hypergeometric: {
      const ExponentPair rep = canonical_pair(info.family, info.exponents);
      const bool mirrored = !(rep == info.exponents);
      static const std::map<std::pair<int, int>, std::string> rows = {
          {{0, 0}, "V0 + V1/z + V2/z^2 + V3/(z-1) + V4/(z-1)^2"},
          {{1, -1}, "V0 + V1/z + V2/(z-1) + V3/(z-1)^2 + V4/(z-1)^3"},
          {{1, 0}, "V0 + V1 z + V2/z + V3/(z-1) + V4/(z-1)^2"},
          {{1, 1}, "V0 + V1 z + V2 z^2 + V3/z + V4/(z-1)"},
          {{2, -2}, "V0 + V1/(z-1) + V2/(z-1)^2 + V3/(z-1)^3 + V4/(z-1)^4"},
          {{2, -1}, "V0 + V1 z + V2/(z-1) + V3/(z-1)^2 + V4/(z-1)^3"},
          {{2, 0}, "V0 + V1 z + V2 z^2 + V3/(z-1) + V4/(z-1)^2"},
          {{2, 1}, "V0 + V1 z + V2 z^2 + V3 z^3 + V4/(z-1)"},
          {{2, 2}, "V0 + V1 z + V2 z^2 + V3 z^3 + V4 z^4"},
      };
      const std::string row = rows.at({rep.m1.doubled(), rep.m2.doubled()});
      return mirrored ? "[z -> 1-z] " + row : row;
    }
    case EquationFamily::ConfluentHypergeometric:
      return "z^(2m1-2) (v0 + v1 z + v2 z^2)";
    case EquationFamily::DoubleConfluentHeun:
      switch (a) {
        case 0: return "V0 + V1/x + V2/x^2 + V3/x^3 + V4/x^4";
        case 1: return "V0 x^2 + V1 + V2/x^2 + V3/x^4 + V4/x^6";
        case 2: return "V0 e^-2x + V1 e^-x + V2 + V3 e^x + V4 e^2x";
        default: return "z^(2m1-4) (v0 + v1 z + v2 z^2 + v3 z^3 + v4 z^4)";
      }
    case EquationFamily::BiConfluentHeun:
      switch (a) {
        case -2: return "V0/x^2 + V1/x^(3/2) + V2/x + V3/x^(1/2) + V4";
        case -1: return "V0/x^2 + V1/x^(4/3) + V2/x^(2/3) + V3 + V4 x^(2/3)";
        case 0: return "V0/x^2 + V1/x + V2 + V3 x + V4 x^2";
        case 1: return "V0/x^2 + V1 + V2 x^2 + V3 x^4 + V4 x^6";
        default: return "V0 + V1 e^x + V2 e^2x + V3 e^3x + V4 e^4x";
      }
    case EquationFamily::TriConfluentHeun:
      return "V0 + V1 x + V2 x^2 + V3 x^3 + V4 x^4";
  }
  (void)b;
  return "";
}

std::string map_formula(const ClassInfo& info) {
  const ExponentPair rep = canonical_pair(info.family, info.exponents);
  const int a = rep.m1.doubled();
  const int b = rep.m2.doubled();
  if (finite_singularity_count(info.family) == 2) {
    static const std::map<std::pair<int, int>, std::string> rows = {
        {{0, 0}, "z"},
        {{1, -1}, "sqrt(z(z-1)) - asinh(sqrt(z-1))"},
        {{1, 0}, "2 sqrt(z)"},
        {{1, 1}, "2 asinh(sqrt(z-1))"},
        {{2, -2}, "z - log(z)"},
        {{2, -1}, "2 sqrt(z-1) - 2 atan(sqrt(z-1))"},
        {{2, 0}, "log(z)"},
        {{2, 1}, "2 atan(sqrt(z-1))"},
        {{2, 2}, "2 atanh(1-2z)"},
    };
    const std::string row = "(x-x0)/sigma = " + rows.at({a, b});
    return rep == info.exponents ? row : row + "  evaluated at 1-z, sigma -> -sigma";
  }
  if (info.family == EquationFamily::TriConfluentHeun) return "(x-x0)/sigma = z";
  if (a == 2) return "(x-x0)/sigma = log(z)";
  return "(x-x0)/sigma = z^(1-m1)/(1-m1)";
}

nlohmann::json to_json(const ZInterval& d) {
  auto bound = [](double v) -> nlohmann::json {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
  };
  return nlohmann::json::array({bound(d.lo), bound(d.hi), d.lo_open, d.hi_open});
}

nlohmann::json to_json(const ClassInfo& info) {
  nlohmann::json j;
  j["family"] = std::string(to_string(info.family));
  j["m1_doubled"] = info.exponents.m1.doubled();
  j["m2_doubled"] = info.exponents.m2.doubled();
  auto subs = nlohmann::json::array();
  for (auto s : info.subfamilies) subs.push_back(std::string(to_string(s)));
  j["subfamilies"] = subs;
  j["z_domain"] = to_json(info.z_domain);
  j["map_kind"] = std::string(to_string(info.map_kind));
  j["independent"] = info.independent;
  if (info.mirror) {
    j["mirror_m1_doubled"] = info.mirror->m1.doubled();
    j["mirror_m2_doubled"] = info.mirror->m2.doubled();
  }
  return j;
}

}  // namespace natanzon
