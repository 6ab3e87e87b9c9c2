#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "natanzon/heun.hpp"
#include "natanzon/polynomial.hpp"
#include "natanzon/potentials.hpp"

namespace natanzon {

/// I(z) = g - f'/2 - f^2/4 of the family's canonical form.
double invariant(EquationFamily family, const HeunParams& p, double z);

/// Denominator D(z) with I(z) D(z) a quartic: z^2 (z-1)^2, z^4, z^2, 1.
Poly invariant_denominator(EquationFamily family);

/// I(z) D(z) as a polynomial in z.
Poly invariant_numerator(EquationFamily family, const HeunParams& p);

/// The quartic that I(z) D(z) must equal for the potential at energy E.
Poly required_numerator(const PotentialSpec& spec, double E);

/// Wavefunction prefactor phi(z) = exp(a0 b0(z) + a1 b1(z) + a2 b2(z)) with
/// the basis (b0, b1, b2) fixed by the family:
///   CHE (z, log|z|, log|z-1|)   DHE (z, log z, 1/z)
///   BHE (z, log z, z^2)         THE (z, z^2, z^3)
struct AnsatzFactors {
  double a0 = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;
};

enum class RootStatus { Distinct, Double, Complex, Absent };
std::string_view to_string(RootStatus s);

struct WaveSolution {
  EquationFamily family = EquationFamily::ConfluentHeun;
  AnsatzFactors factors;
  HeunParams heun;
  double energy = 0.0;
  /// Root taken in each quadratic slot: +1 / -1, 0 for a double or absent root.
  std::array<int, 3> branch{0, 0, 0};
  /// A parameter left undetermined by a degree drop was set to zero.
  bool free_parameter_fixed = false;

  std::string tag() const;
};

struct AnsatzResult {
  std::vector<WaveSolution> solutions;
  /// Slots: CHE (gamma, delta, epsilon), DHE (gamma, epsilon, -),
  /// BHE (gamma, epsilon, -), THE (epsilon, delta if epsilon = 0, -).
  std::array<RootStatus, 3> status{RootStatus::Absent, RootStatus::Absent, RootStatus::Absent};
};

/// Every real branch of the ansatz for the potential at energy E. Throws
/// NumericalError when the coefficient system is inconsistent.
AnsatzResult solve_ansatz(const PotentialSpec& spec, double E);

AnsatzFactors ansatz_factors(EquationFamily family, HeunParams p, HalfInt m1, HalfInt m2);

/// log phi and d(log phi)/dz, d^2(log phi)/dz^2.
struct PrefactorValue {
  double log_phi;
  double d1;
  double d2;
};
PrefactorValue prefactor(EquationFamily family, const AnsatzFactors& a, double z);

/// max over the grid of |rho^2 I + {z,x}/2 - (E - V)|.
double residual(const PotentialSpec& spec, const WaveSolution& sol, const std::vector<double>& x_grid);

/// max over the grid of |psi'' + (E - V) psi| / (|psi''| + |(E - V) psi|) with
/// psi = phi(z) u(z), u from heun_c (or its z = 1 counterpart, or a local
/// solution for the other families) and psi'' assembled from (u, u').
double residual_psi(const PotentialSpec& spec, const WaveSolution& sol, const std::vector<double>& x_grid);

struct PsiSample {
  double x;
  double z;
  double psi;
  double dpsi_dx;
};

/// psi = phi(z) u(z) at each x.
std::vector<PsiSample> build_psi(const PotentialSpec& spec, const WaveSolution& sol,
                                 const std::vector<double>& x_grid);

/// A z-window strictly inside the branch that avoids singular points, used
/// for sampling grids.
std::array<double, 2> sample_window(const PotentialSpec& spec);

/// n x-points equally spaced over the image of sample_window().
std::vector<double> sample_grid(const PotentialSpec& spec, int n);

/// One verification case: a potential and an energy at which every
/// quadratic of the ansatz has real roots.
struct VerifyDraw {
  PotentialSpec spec;
  double energy = 0.0;
};

/// One random coefficient set (table labels in [-2, 2], sigma in [0.5, 1.5],
/// x0 in [-1/2, 1/2]) paired with n_energies energies in [-3, 3], by
/// rejection sampling. Deterministic for a given generator state.
std::vector<VerifyDraw> random_draws(const ClassInfo& info, std::mt19937_64& rng, int n_energies);

struct VerifyRecord {
  EquationFamily family;
  ExponentPair exponents;
  Coeffs table{};
  double sigma = 0.0;
  double x0 = 0.0;
  double energy = 0.0;
  std::string branch;
  double residual_identity = 0.0;
  double residual_psi = 0.0;
};

/// Solves the ansatz for one draw and measures both residuals on every branch.
std::vector<VerifyRecord> verify_draw(const VerifyDraw& draw, int grid_points);

nlohmann::json to_json(const VerifyRecord& r);

/// The classes checked by the verification suite: the nine confluent Heun
/// representatives and every double-, bi- and tri-confluent class that is
/// independent.
std::vector<ClassInfo> verification_classes();

}  // namespace natanzon
