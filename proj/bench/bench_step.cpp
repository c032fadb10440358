// Times the serial reference step against the OpenMP kernel on square grids
// with a fault cross through the middle. Both paths must end in the same state.
//
//   faultsim_bench [steps]

#include <chrono>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "faultsim/dynamics.hpp"
#include "faultsim/dynamics_ref.hpp"
#include "faultsim/rasterize.hpp"

using namespace faultsim;

namespace {

template <typename StepFn>
double time_steps(const FaultMap& faults, const SimConfig& cfg, int steps, StressMap& stress,
                  SplitMix64& rng, StepFn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  std::int64_t cumulative = 0;
  for (int i = 1; i <= steps; ++i) {
    cumulative = fn(stress, faults, cfg, rng, cumulative, i).cumulative_quakes;
  }
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  const int steps = argc > 1 ? std::atoi(argv[1]) : 50;
#ifdef _OPENMP
  std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
  std::printf("openmp: disabled\n");
#endif
  std::printf("%6s %8s %12s %12s %8s\n", "side", "steps", "serial_ms", "kernel_ms", "speedup");

  for (int side : {64, 256, 1024}) {
    SimConfig cfg;
    cfg.dims = GridDims(side, side);
    cfg.seed = 7;
    FaultMap faults = new_fault_map(cfg.dims);
    draw_vertical(faults, side / 2);
    draw_horizontal(faults, side / 2);

    StressMap serial_map = new_stress_map(cfg.dims);
    SplitMix64 serial_rng(cfg.seed);
    const double serial_ms = time_steps(
        faults, cfg, steps, serial_map, serial_rng,
        [](StressMap& s, const FaultMap& f, const SimConfig& c, SplitMix64& r, std::int64_t q,
           std::int64_t i) { return step_reference(s, f, c, r, q, i); });

    StressMap kernel_map = new_stress_map(cfg.dims);
    SplitMix64 kernel_rng(cfg.seed);
    const double kernel_ms = time_steps(faults, cfg, steps, kernel_map, kernel_rng, step);

    if (!(serial_map == kernel_map) || !(serial_rng == kernel_rng)) {
      std::fprintf(stderr, "mismatch between serial and kernel at side %d\n", side);
      return 1;
    }
    std::printf("%6d %8d %12.2f %12.2f %8.2f\n", side, steps, serial_ms, kernel_ms,
                serial_ms / kernel_ms);
  }
  return 0;
}
