#pragma once

#include <functional>
#include <vector>

namespace natanzon {

struct OdeOptions {
  double abs_tol = 1e-13;
  double rel_tol = 1e-13;
  double initial_step = 1e-3;
};

/// y(x) for y' = f(x, y), y(x0) = y0, at each grid point. The grid may lie on
/// both sides of x0 and need not be sorted.
std::vector<double> integrate_first_order(const std::function<double(double, double)>& f, double x0,
                                          double y0, const std::vector<double>& grid,
                                          const OdeOptions& opt = {});

struct State2 {
  double u;
  double du;
};

/// (u, u') at each grid point for u'' = accel(z, u, u').
std::vector<State2> integrate_second_order(
    const std::function<double(double, double, double)>& accel, double z0, State2 init,
    const std::vector<double>& grid, const OdeOptions& opt = {});

}  // namespace natanzon
