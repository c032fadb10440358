#pragma once

// Serial reference for the stress update: one draw
// per cell through the engine's range(), row-major, then a separate quake
// pass. The engine is a template parameter so tests can count draws.

#include <algorithm>
#include <stdexcept>

#include "faultsim/dynamics.hpp"

namespace faultsim {

template <typename Engine>
StepReport step_reference(StressMap& stress, const FaultMap& faults, const SimConfig& cfg,
                          Engine& rng, std::int64_t cumulative, std::int64_t step_index) {
  if (!(stress.dims() == faults.dims()) || !(stress.dims() == cfg.dims)) {
    throw std::invalid_argument("step: dimension mismatch");
  }
  StepReport report;
  report.step_index = step_index;
  report.cell_count = stress.dims().area();

  for (int y = 0; y < stress.height(); ++y) {
    for (int x = 0; x < stress.width(); ++x) {
      const bool fault = is_fault(faults, x, y);
      const Stress delta = fault ? rng.range(cfg.fault_delta_min, cfg.fault_delta_max)
                                 : rng.range(cfg.nonfault_delta_min, cfg.nonfault_delta_max);
      const Stress value = std::max<Stress>(0, stress.get(x, y) + delta);
      stress.set(x, y, value);
      report.max_stress = std::max(report.max_stress, value);
    }
  }

  for (int y = 0; y < stress.height(); ++y) {
    for (int x = 0; x < stress.width(); ++x) {
      if (stress.get(x, y) >= cfg.quake_threshold) {
        report.quaked_cells.push_back({x, y});
        stress.set(x, y, 0);
      }
      report.stress_sum += stress.get(x, y);
    }
  }

  report.cumulative_quakes = cumulative + static_cast<std::int64_t>(report.quaked_cells.size());
  return report;
}

}  // namespace faultsim
