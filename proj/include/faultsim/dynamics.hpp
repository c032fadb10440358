#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "faultsim/grid.hpp"
#include "faultsim/rng.hpp"

namespace faultsim {

struct SimConfig {
  // Keeps a whole-grid stress sum inside int64 (1024 * 1024 cells).
  static constexpr Stress kMaxQuakeThreshold = 1'000'000'000'000;

  GridDims dims;
  std::uint64_t seed = 0;
  Stress quake_threshold = 100;
  std::int64_t target_quakes = 3;
  int nonfault_delta_min = -5;
  int nonfault_delta_max = 5;
  int fault_delta_min = 0;
  int fault_delta_max = 10;
  std::int64_t delay_ms = 1000;
  std::int64_t max_steps = 100'000;

  /// Throws std::invalid_argument naming the first violated constraint.
  void validate() const;

  friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

struct StepReport {
  std::int64_t step_index = 0;  // 1-based
  std::vector<Cell> quaked_cells;  // row-major order
  std::int64_t cumulative_quakes = 0;
  Stress max_stress = 0;  // before quaked cells are reset
  Stress stress_sum = 0;  // after reset
  std::size_t cell_count = 1;

  std::size_t quakes_this_step() const { return quaked_cells.size(); }
  double mean_stress() const { return static_cast<double>(stress_sum) / cell_count; }

  friend bool operator==(const StepReport&, const StepReport&) = default;
};

struct SimSummary {
  std::int64_t total_steps = 0;
  std::int64_t total_quakes = 0;
  bool hit_max_steps = false;
  StressMap final_stress{GridDims{}};
  std::vector<StepReport> reports;

  friend bool operator==(const SimSummary&, const SimSummary&) = default;
};

/// Advances `stress` by one step and consumes exactly width*height draws from
/// `rng`. Cell i (row-major) receives the i-th draw. Quaked cells are reset
/// to zero before returning. This is the OpenMP kernel; step_reference() in
/// dynamics_ref.hpp is the serial loop it must agree with.
StepReport step(StressMap& stress, const FaultMap& faults, const SimConfig& cfg,
                SplitMix64& rng, std::int64_t cumulative, std::int64_t step_index);

using StepObserver = std::function<void(const StepReport&, const StressMap&)>;

/// Runs from an all-zero map until target_quakes is reached or max_steps
/// steps have been taken.
SimSummary run(const FaultMap& faults, const SimConfig& cfg, const StepObserver& observer = {});

}  // namespace faultsim
