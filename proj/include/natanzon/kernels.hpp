#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "natanzon/reduction.hpp"

namespace natanzon {

struct ProfileRow {
  double x;
  double z;
  double V;  // signed infinity at a pole
};

/// Uniform x grid of n points on [x_lo, x_hi] with z(x) and V. Throws
/// DomainError if the interval leaves the image of the branch.
std::vector<ProfileRow> profile_serial(const PotentialSpec& spec, double x_lo, double x_hi, int n);
std::vector<ProfileRow> profile_parallel(const PotentialSpec& spec, double x_lo, double x_hi, int n);

/// Default profile interval: the x-image of the class sampling window.
std::pair<double, double> default_profile_range(const PotentialSpec& spec);

/// draws_per_class coefficient sets, each with n_energies energies, for every
/// class in order, all from one generator seeded with seed.
std::vector<VerifyDraw> verification_plan(const std::vector<ClassInfo>& classes, std::uint64_t seed,
                                          int draws_per_class, int n_energies = 3);

struct VerifyOutcome {
  std::vector<VerifyRecord> records;
  std::string error;  // empty on success
};

std::vector<VerifyOutcome> verify_sweep_serial(const std::vector<VerifyDraw>& plan, int grid_points);
std::vector<VerifyOutcome> verify_sweep_parallel(const std::vector<VerifyDraw>& plan, int grid_points);

}  // namespace natanzon
