// Serial vs OpenMP timings for the profile, verification and Numerov kernels.

#include <chrono>
#include <cstdio>
#include <functional>

#include <omp.h>

#include "natanzon/kernels.hpp"
#include "natanzon/spectra.hpp"

using namespace natanzon;

namespace {

double seconds(const std::function<void()>& f, int repeats) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

void report(const char* name, double serial, double parallel) {
  std::printf("%-28s serial %10.4f s   parallel %10.4f s   speedup %6.2f\n", name, serial, parallel,
              serial / parallel);
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());

  const auto lw = class_info(EquationFamily::ConfluentHeun, {HalfInt(1), HalfInt(-1)});
  const PotentialSpec spec = PotentialSpec::from_table(lw, {0.5, -1.0, 0.3, -0.2, 0.1}, 1.0, -1.0);
  const auto [lo, hi] = default_profile_range(spec);
  constexpr int kProfileN = 200000;
  report("profile (Lambert class)", seconds([&] { profile_serial(spec, lo, hi, kProfileN); }, 3),
         seconds([&] { profile_parallel(spec, lo, hi, kProfileN); }, 3));

  const auto plan = verification_plan(verification_classes(), 7, 5);
  report("verify sweep (all classes)", seconds([&] { verify_sweep_serial(plan, 200); }, 3),
         seconds([&] { verify_sweep_parallel(plan, 200); }, 3));

  const SpecializationParams morse{0.0, -200.0, 100.0, 1.0, 0.0};
  const PotentialSpec m = specialization_spec(Specialization::Morse, morse);
  const auto oracle = closed_form_spectrum(Specialization::Morse, morse, 9);
  const std::pair<double, double> win{oracle.energies.front() - 10.0, oracle.energies.back() + 0.5};
  NumerovOptions serial, parallel;
  serial.parallel = false;
  parallel.parallel = true;
  report("Numerov levels (Morse, 9)", seconds([&] { numerov_bound_states(m, win, 9, serial); }, 3),
         seconds([&] { numerov_bound_states(m, win, 9, parallel); }, 3));
  return 0;
}
