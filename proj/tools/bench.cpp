// Timings for the OpenMP kernels against their serial references. Results
// must match exactly (rationals) or bit-for-bit (MC estimates); the point of
// the serial paths is that equality, so it is asserted here too.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>

#include "slecoef/biseries.hpp"
#include "slecoef/mc.hpp"

using namespace slecoef;

namespace {

using Clock = std::chrono::steady_clock;

template <class F>
double best_of(int reps, F f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = Clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(Clock::now() - t0).count());
  }
  return best;
}

BiSeries random_series(int nmax, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  BiSeries s(nmax);
  for (int i = 0; i <= nmax; ++i)
    for (int j = 0; j <= nmax; ++j)
      s.at(i, j) = Rational(static_cast<long>(g() % 19) - 9, 1 + static_cast<long>(g() % 7));
  return s;
}

}  // namespace

int main() {
  std::printf("threads: %d\n\n", omp_get_max_threads());
  std::printf("%-28s %10s %10s %8s\n", "kernel", "serial[s]", "openmp[s]", "speedup");

  for (int nmax : {32, 64}) {
    const BiSeries a = random_series(nmax, 1);
    const BiSeries b = random_series(nmax, 2);
    BiSeries serial(nmax), parallel(nmax);
    const double ts = best_of(3, [&] { serial = biseries_mul_serial(a, b); });
    const double tp = best_of(3, [&] { parallel = biseries_mul(a, b); });
    if (!(serial == parallel)) {
      std::fprintf(stderr, "biseries_mul mismatch at nmax=%d\n", nmax);
      return 1;
    }
    char name[64];
    std::snprintf(name, sizeof name, "biseries_mul nmax=%d", nmax);
    std::printf("%-28s %10.3f %10.3f %8.2f\n", name, ts, tp, ts / tp);
  }

  McConfig cfg;
  cfg.kappa = 6.0;
  cfg.nmax = 5;
  cfg.paths = 4000;
  cfg.dt = 1e-2;
  cfg.horizon = 8.0;
  cfg.seed = 7;
  MomentEstimates es, ep;
  const double ts = best_of(2, [&] { es = mc_run_serial(cfg); });
  const double tp = best_of(2, [&] { ep = mc_run(cfg); });
  for (std::size_t i = 0; i < es.second.size(); ++i)
    if (es.second[i].mean != ep.second[i].mean || es.second[i].std_error != ep.second[i].std_error) {
      std::fprintf(stderr, "mc_run estimates differ between serial and parallel\n");
      return 1;
    }
  std::printf("%-28s %10.3f %10.3f %8.2f\n", "mc_run 4000 paths", ts, tp, ts / tp);
  return 0;
}
