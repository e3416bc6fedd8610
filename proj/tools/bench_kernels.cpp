// Timing comparison: OpenMP site-parallel kernels vs the serial references.
// Usage: bench_kernels [box_extent] [repetitions]

#include <chrono>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dpsqft/lattice.hpp"
#include "dpsqft/modes.hpp"

using namespace dpsqft;

namespace {

template <typename F>
double time_ms(int reps, F&& fn) {
  // one warm-up, then best-of-reps
  fn();
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
    if (ms < best) best = ms;
  }
  return best;
}

double sink_store = 0.0;
void sink(double v) { sink_store += v; }  // keep results observable

}  // namespace

int main(int argc, char** argv) {
  const int extent = argc > 1 ? std::atoi(argv[1]) : 48;
  const int reps = argc > 2 ? std::atoi(argv[2]) : 5;
  if (extent < 2 || reps < 1) {
    std::fprintf(stderr, "usage: bench_kernels [box_extent >= 2] [repetitions >= 1]\n");
    return 2;
  }

#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP disabled at build time (serial twin only)\n");
#endif
  std::printf("box %d^3, best of %d runs\n\n", extent, reps);

  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  LatticeField<cd> f(LatticeBox::cube3(extent));
  for (auto& v : f.values) v = cd(u(rng), u(rng));

  std::printf("%-24s %12s %12s %9s\n", "kernel", "parallel ms", "serial ms", "speedup");
  auto row = [&](const char* name, double par, double ser) {
    std::printf("%-24s %12.3f %12.3f %8.2fx\n", name, par, ser, ser / par);
  };

  row("delta_right",
      time_ms(reps, [&] { sink(std::abs(delta_right(f, 0).values[1])); }),
      time_ms(reps, [&] { sink(std::abs(delta_right_serial(f, 0).values[1])); }));
  row("delta_left",
      time_ms(reps, [&] { sink(std::abs(delta_left(f, 1).values[1])); }),
      time_ms(reps, [&] { sink(std::abs(delta_left_serial(f, 1).values[1])); }));
  row("delta_sharp",
      time_ms(reps, [&] { sink(std::abs(delta_sharp(f, 2).values[1])); }),
      time_ms(reps, [&] { sink(std::abs(delta_sharp_serial(f, 2).values[1])); }));

  ModeSet ms = ModeSet::gauss_product({6, 6, 6}, 1.0);
  const int n_box = 24;
  row("site_sum_kernels",
      time_ms(reps, [&] { sink(std::abs(site_sum_kernels(ms, n_box).g_conj(0, 0))); }),
      time_ms(reps,
              [&] { sink(std::abs(site_sum_kernels_serial(ms, n_box).g_conj(0, 0))); }));

  return 0;
}
