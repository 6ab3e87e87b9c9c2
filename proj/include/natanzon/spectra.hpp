#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "natanzon/potentials.hpp"

namespace natanzon {

struct Spectrum {
  std::vector<double> energies;
  std::vector<int> node_counts;
  double x_lo = 0.0;
  double x_hi = 0.0;
  int grid_n = 0;
  double method_tol = 0.0;
};

struct NumerovOptions {
  int grid_n = 40000;
  /// Truncate an infinite side once the WKB exponent beyond the outermost
  /// turning point at the top of the window reaches this value.
  double wkb_decay = 25.0;
  /// Treat V on [x0, inf) as even about x0 and solve on the full line.
  bool even_extension = false;
  /// Extrapolate from grids n and 2n.
  bool richardson = false;
  /// Solve levels in parallel.
  bool parallel = true;
  /// Override the automatic domain.
  std::optional<double> x_lo;
  std::optional<double> x_hi;
};

/// Dirichlet problem psi'' = (V - E) psi, psi(a) = psi(b) = 0 on a uniform
/// grid of n points. V is only evaluated at interior points.
struct NumerovProblem {
  std::vector<double> x;
  std::vector<double> V;  // V[0] and V[n-1] unused
  double h = 0.0;

  static NumerovProblem build(const std::function<double(double)>& V, double a, double b, int n);
};

/// Number of discrete eigenvalues below E (sign changes of the shooting solution).
int numerov_count(const NumerovProblem& prob, double E);

/// Discrete eigenvalue with index n (n nodes), bracketed by counting and
/// refined on the matching-point Casoratian.
double numerov_level(const NumerovProblem& prob, int n, double e_lo, double e_hi);

/// Bound states of a catalog potential with energies in e_window and at most
/// n_max of them, lowest first.
Spectrum numerov_bound_states(const PotentialSpec& spec, std::pair<double, double> e_window, int n_max,
                              const NumerovOptions& opt = {});

/// Same for an arbitrary potential on [a, b] with hard walls.
Spectrum numerov_bound_states(const std::function<double(double)>& V, double a, double b,
                              std::pair<double, double> e_window, int n_max, const NumerovOptions& opt = {});

/// V(x) for Numerov: the explicit x-form where available, else the map composition.
double potential_at(const PotentialSpec& spec, double x);

enum class Specialization { Eckart, PoschlTeller, Morse, Harmonic, Kratzer };
std::string_view to_string(Specialization s);
Specialization parse_specialization(std::string_view name);

/// Parameters of a classical potential; meaning of a and b per specialization:
///   Eckart        V = v0 + a/(z-1) + b/(z-1)^2, z = exp((x-x0)/sigma) in (0,1)
///   PoschlTeller  V = v0 + a sech^2((x-x0)/(2 sigma))
///   Morse         V = v0 + a exp(t) + b exp(2t), t = (x-x0)/sigma
///   Harmonic      V = v0 + b t^2
///   Kratzer       V = v0 + a/t + b/t^2, t > 0
struct SpecializationParams {
  double v0 = 0.0;
  double a = 0.0;
  double b = 0.0;
  double sigma = 1.0;
  double x0 = 0.0;
};

/// Textbook level sequence (at most n_max levels). Throws DomainError when
/// the parameters admit no bound state.
///   Eckart        nu = 1/2 + sqrt(1/4 + sigma^2 b),
///                 mu_n = (sigma^2 (a - b) - (nu+n)^2) / (2 (nu+n)) > 0,
///                 E_n = v0 - a + b - mu_n^2 / sigma^2
///   PoschlTeller  l = 2 sigma, lambda = 1/2 + sqrt(1/4 - a l^2),
///                 E_n = v0 - (lambda - 1 - n)^2 / l^2, n < lambda - 1
///   Morse         beta = -a sigma / (2 sqrt b), E_n = v0 - (beta - n - 1/2)^2 / sigma^2
///   Harmonic      E_n = v0 + (2n + 1) sqrt(b) / sigma
///   Kratzer       s = 1/2 + sqrt(1/4 + b sigma^2), E_n = v0 - (a sigma)^2 / (4 (n + s)^2)
Spectrum closed_form_spectrum(Specialization name, const SpecializationParams& p, int n_max = 5);

/// Reads the parameters of a specialization back from a catalog potential.
/// Throws CatalogError when the class or a label outside the
/// specialization's slots does not match.
SpecializationParams specialization_params(Specialization name, const PotentialSpec& spec);

/// The catalog potential that contains the specialization, with its branch.
PotentialSpec specialization_spec(Specialization name, const SpecializationParams& p);

struct CrossValidation {
  Specialization name;
  PotentialSpec spec;
  Spectrum numerov;
  Spectrum oracle;
  double max_rel_err = 0.0;
};

/// Numerov levels of the catalog potential against the closed form, for the
/// lowest n_max levels (or all, if fewer).
CrossValidation cross_validate(Specialization name, const SpecializationParams& p, int n_max = 5,
                               const NumerovOptions& opt = {});

nlohmann::json to_json(const CrossValidation& cv);
nlohmann::json to_json(const Spectrum& s);

}  // namespace natanzon
