#include "natanzon/kernels.hpp"

#include <algorithm>
#include <exception>
#include <random>

#include "natanzon/errors.hpp"

namespace natanzon {

namespace {

void check_profile_args(const PotentialSpec& spec, double x_lo, double x_hi, int n) {
  if (n < 2) throw DomainError("profile grid needs at least 2 points");
  if (!(x_hi > x_lo)) throw DomainError("profile needs x_max > x_min");
  const XRange r = x_image(spec.map());
  if (x_lo < r.lo || x_hi > r.hi)
    throw DomainError("profile interval [" + std::to_string(x_lo) + ", " + std::to_string(x_hi) +
                      "] leaves the x-image [" + std::to_string(r.lo) + ", " + std::to_string(r.hi) +
                      "] of the branch");
}

ProfileRow profile_point(const PotentialSpec& spec, const MapSpec& map, double x) {
  const double z = z_of_x(map, x);
  return {x, z, eval_potential_z(spec, z)};
}

double grid_x(double x_lo, double x_hi, int n, int i) {
  return i == n - 1 ? x_hi : x_lo + (x_hi - x_lo) * i / (n - 1);
}

VerifyOutcome verify_one(const VerifyDraw& d, int grid_points) {
  VerifyOutcome out;
  try {
    out.records = verify_draw(d, grid_points);
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

}  // namespace

std::vector<ProfileRow> profile_serial(const PotentialSpec& spec, double x_lo, double x_hi, int n) {
  check_profile_args(spec, x_lo, x_hi, n);
  const MapSpec map = spec.map();
  std::vector<ProfileRow> rows(n);
  for (int i = 0; i < n; ++i) rows[i] = profile_point(spec, map, grid_x(x_lo, x_hi, n, i));
  return rows;
}

std::vector<ProfileRow> profile_parallel(const PotentialSpec& spec, double x_lo, double x_hi, int n) {
  check_profile_args(spec, x_lo, x_hi, n);
  const MapSpec map = spec.map();
  std::vector<ProfileRow> rows(n);
  std::exception_ptr err;
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    try {
      rows[i] = profile_point(spec, map, grid_x(x_lo, x_hi, n, i));
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  return rows;
}

std::pair<double, double> default_profile_range(const PotentialSpec& spec) {
  const auto w = sample_window(spec);
  const MapSpec map = spec.map();
  const double a = x_of_z(map, w[0]), b = x_of_z(map, w[1]);
  return {std::min(a, b), std::max(a, b)};
}

std::vector<VerifyDraw> verification_plan(const std::vector<ClassInfo>& classes, std::uint64_t seed,
                                          int draws_per_class, int n_energies) {
  std::mt19937_64 rng(seed);
  std::vector<VerifyDraw> plan;
  for (const ClassInfo& info : classes)
    for (int k = 0; k < draws_per_class; ++k) {
      auto d = random_draws(info, rng, n_energies);
      plan.insert(plan.end(), d.begin(), d.end());
    }
  return plan;
}

std::vector<VerifyOutcome> verify_sweep_serial(const std::vector<VerifyDraw>& plan, int grid_points) {
  std::vector<VerifyOutcome> out(plan.size());
  for (std::size_t i = 0; i < plan.size(); ++i) out[i] = verify_one(plan[i], grid_points);
  return out;
}

std::vector<VerifyOutcome> verify_sweep_parallel(const std::vector<VerifyDraw>& plan, int grid_points) {
  std::vector<VerifyOutcome> out(plan.size());
  const long n = static_cast<long>(plan.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) out[i] = verify_one(plan[i], grid_points);
  return out;
}

}  // namespace natanzon
