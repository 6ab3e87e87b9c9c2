#include "natanzon/ode.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include <boost/numeric/odeint.hpp>

#include "natanzon/errors.hpp"

namespace natanzon {

namespace {

namespace odeint = boost::numeric::odeint;

// Runs the controlled RKF78 stepper from x0 through every grid point,
// forwards for points right of x0 and backwards for points left of it.
template <std::size_t N, class Rhs>
std::vector<std::array<double, N>> sweep(Rhs rhs, double x0, const std::array<double, N>& y0,
                                         const std::vector<double>& grid, const OdeOptions& opt) {
  using State = std::array<double, N>;
  std::vector<State> out(grid.size(), y0);
  std::vector<std::size_t> idx(grid.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return grid[a] < grid[b]; });

  auto run = [&](const std::vector<std::size_t>& order, double dir) {
    if (order.empty()) return;
    std::vector<double> times{x0};
    for (std::size_t i : order) times.push_back(grid[i]);
    auto stepper = odeint::make_controlled(opt.abs_tol, opt.rel_tol,
                                           odeint::runge_kutta_fehlberg78<State>());
    State y = y0;
    std::size_t k = 0;
    try {
      odeint::integrate_times(
          stepper, rhs, y, times.begin(), times.end(), dir * opt.initial_step,
          [&](const State& s, double) {
            if (k > 0) out[order[k - 1]] = s;
            ++k;
          },
          odeint::max_step_checker(1000000));
    } catch (const odeint::step_adjustment_error& e) {
      throw NumericalError(std::string("ODE step-size underflow: ") + e.what());
    } catch (const odeint::no_progress_error& e) {
      throw NumericalError(std::string("ODE made no progress: ") + e.what());
    }
  };

  std::vector<std::size_t> fwd, bwd;
  for (std::size_t i : idx) (grid[i] >= x0 ? fwd : bwd).push_back(i);
  std::reverse(bwd.begin(), bwd.end());
  run(fwd, 1.0);
  run(bwd, -1.0);
  return out;
}

}  // namespace

std::vector<double> integrate_first_order(const std::function<double(double, double)>& f, double x0,
                                          double y0, const std::vector<double>& grid,
                                          const OdeOptions& opt) {
  using State = std::array<double, 1>;
  auto rhs = [&f](const State& y, State& dy, double x) { dy[0] = f(x, y[0]); };
  const auto states = sweep<1>(rhs, x0, State{y0}, grid, opt);
  std::vector<double> out(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) out[i] = states[i][0];
  return out;
}

std::vector<State2> integrate_second_order(
    const std::function<double(double, double, double)>& accel, double z0, State2 init,
    const std::vector<double>& grid, const OdeOptions& opt) {
  using State = std::array<double, 2>;
  auto rhs = [&accel](const State& y, State& dy, double z) {
    dy[0] = y[1];
    dy[1] = accel(z, y[0], y[1]);
  };
  const auto states = sweep<2>(rhs, z0, State{init.u, init.du}, grid, opt);
  std::vector<State2> out(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) out[i] = {states[i][0], states[i][1]};
  return out;
}

}  // namespace natanzon
