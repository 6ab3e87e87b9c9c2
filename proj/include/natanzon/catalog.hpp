#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "natanzon/halfint.hpp"

namespace natanzon {

enum class EquationFamily {
  Hypergeometric,
  ConfluentHypergeometric,
  ConfluentHeun,
  DoubleConfluentHeun,
  BiConfluentHeun,
  TriConfluentHeun,
};

inline constexpr std::array<EquationFamily, 6> kAllFamilies = {
    EquationFamily::Hypergeometric,      EquationFamily::ConfluentHypergeometric,
    EquationFamily::ConfluentHeun,       EquationFamily::DoubleConfluentHeun,
    EquationFamily::BiConfluentHeun,     EquationFamily::TriConfluentHeun,
};

/// Kebab-case name used on the command line and in JSON ("confluent-heun").
std::string_view to_string(EquationFamily family);
EquationFamily parse_family(std::string_view name);

/// Number of finite singular points of the target equation: 2, 1, 2, 1, 1, 0.
int finite_singularity_count(EquationFamily family);

/// True for the four Heun-type families that own potentials and ansatz solutions.
bool is_heun_family(EquationFamily family);

/// Exponents of the map z'(x) = z^m1 (z-1)^m2 / sigma. m2 is zero for
/// one-singularity families; both are zero for the tri-confluent family.
struct ExponentPair {
  HalfInt m1;
  HalfInt m2;

  auto operator<=>(const ExponentPair&) const = default;
  std::string str() const;  // "(1, -1/2)"
};

/// Real interval with open or closed ends; infinite ends are always open.
struct ZInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_open = true;
  bool hi_open = true;

  bool contains(double z) const;
  bool in_interior(double z) const { return z > lo && z < hi; }
  bool in_closure(double z) const { return z >= lo && z <= hi; }
  ZInterval reflected() const;  // image under z -> 1 - z
  bool operator==(const ZInterval&) const = default;
};

enum class MapKind { ClosedForm, LambertW, NumericInverse };
std::string_view to_string(MapKind kind);

enum class Subfamily { Gauss2F1, Kummer1F1 };
std::string_view to_string(Subfamily s);

struct ClassInfo {
  EquationFamily family = EquationFamily::ConfluentHeun;
  ExponentPair exponents;
  /// z <-> 1-z partner; set for every two-singularity class (diagonal classes
  /// are their own mirror).
  std::optional<ExponentPair> mirror;
  std::vector<Subfamily> subfamilies;
  ZInterval z_domain;
  MapKind map_kind = MapKind::ClosedForm;
  /// False for the z <-> 1-z images with m1 < m2 and for the double-confluent
  /// classes m1 = 3/2, 2.
  bool independent = true;
  /// For dependent double-confluent classes: the class reached by z -> 1/z.
  std::optional<ExponentPair> equivalent_to;

  bool has_subfamily(Subfamily s) const;
};

/// Every exponent pair admitted for the family, sorted lexicographically.
std::vector<ExponentPair> enumerate_classes(EquationFamily family);

/// The classes left after removing z <-> 1-z images (and, for the
/// double-confluent family, the two classes reducible by z -> 1/z).
std::vector<ClassInfo> independent_representatives(EquationFamily family);

/// Metadata for one class. Throws CatalogError for pairs outside the lattice.
ClassInfo class_info(EquationFamily family, ExponentPair pair);

/// Representative of the z <-> 1-z orbit (m1 >= m2).
ExponentPair canonical_pair(EquationFamily family, ExponentPair pair);

/// Human-readable Table-style forms for the class card.
std::string potential_formula(const ClassInfo& info);
std::string map_formula(const ClassInfo& info);

nlohmann::json to_json(const ClassInfo& info);
nlohmann::json to_json(const ZInterval& interval);

}  // namespace natanzon
