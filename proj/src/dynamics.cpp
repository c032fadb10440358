#include "faultsim/dynamics.hpp"

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>

namespace faultsim {

void SimConfig::validate() const {
  if (nonfault_delta_min > nonfault_delta_max) {
    throw std::invalid_argument("nonfault_delta_min exceeds nonfault_delta_max");
  }
  if (fault_delta_min > fault_delta_max) {
    throw std::invalid_argument("fault_delta_min exceeds fault_delta_max");
  }
  if (quake_threshold < 1 || quake_threshold > kMaxQuakeThreshold) {
    throw std::invalid_argument("quake_threshold must be in [1, 1e12]");
  }
  if (target_quakes < 1) throw std::invalid_argument("target_quakes must be >= 1");
  if (delay_ms < 0) throw std::invalid_argument("delay_ms must be >= 0");
  if (max_steps < 1) throw std::invalid_argument("max_steps must be >= 1");
}

StepReport step(StressMap& stress, const FaultMap& faults, const SimConfig& cfg,
                SplitMix64& rng, std::int64_t cumulative, std::int64_t step_index) {
  if (!(stress.dims() == faults.dims()) || !(stress.dims() == cfg.dims)) {
    throw std::invalid_argument("step: dimension mismatch");
  }
  StepReport report;
  report.step_index = step_index;
  report.cell_count = stress.dims().area();

  const std::span<Stress> cells = stress.data();
  const std::span<const std::uint8_t> fault = faults.data();
  const auto n = static_cast<std::ptrdiff_t>(cells.size());
  const std::uint64_t base = rng.state();
  const Stress fault_lo = cfg.fault_delta_min;
  const Stress fault_hi = cfg.fault_delta_max;
  const Stress calm_lo = cfg.nonfault_delta_min;
  const Stress calm_hi = cfg.nonfault_delta_max;

  Stress peak = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(max : peak)
#endif
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const std::uint64_t raw = SplitMix64::at(base, static_cast<std::uint64_t>(i) + 1);
    const Stress delta = fault[i] ? SplitMix64::reduce(raw, fault_lo, fault_hi)
                                  : SplitMix64::reduce(raw, calm_lo, calm_hi);
    const Stress value = std::max<Stress>(0, cells[i] + delta);
    cells[i] = value;
    peak = std::max(peak, value);
  }
  rng.discard(static_cast<std::uint64_t>(n));
  report.max_stress = peak;

  // Quake pass stays serial so quaked_cells comes out in row-major order.
  const int width = stress.width();
  Stress sum = 0;
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    if (cells[i] >= cfg.quake_threshold) {
      report.quaked_cells.push_back(
          {static_cast<int>(i % width), static_cast<int>(i / width)});
      cells[i] = 0;
    }
    sum += cells[i];
  }
  report.stress_sum = sum;
  report.cumulative_quakes = cumulative + static_cast<std::int64_t>(report.quaked_cells.size());
  return report;
}

SimSummary run(const FaultMap& faults, const SimConfig& cfg, const StepObserver& observer) {
  cfg.validate();
  if (!(faults.dims() == cfg.dims)) throw std::invalid_argument("run: dimension mismatch");

  SimSummary summary;
  summary.final_stress = new_stress_map(cfg.dims);
  SplitMix64 rng(cfg.seed);
  std::int64_t cumulative = 0;

  for (std::int64_t index = 1;; ++index) {
    StepReport report = step(summary.final_stress, faults, cfg, rng, cumulative, index);
    cumulative = report.cumulative_quakes;
    if (observer) observer(report, summary.final_stress);
    summary.reports.push_back(std::move(report));
    summary.total_steps = index;
    if (cumulative >= cfg.target_quakes) break;
    if (index >= cfg.max_steps) {
      summary.hit_max_steps = true;
      break;
    }
  }
  summary.total_quakes = cumulative;
  return summary;
}

}  // namespace faultsim
