#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "faultsim/dynamics.hpp"
#include "faultsim/grid.hpp"

namespace faultsim {

struct Scenario {
  SimConfig cfg;
  FaultMap faults{GridDims{}};

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

enum class ScenarioErrorKind {
  BadMagic,
  MissingKey,
  UnknownKey,
  MalformedValue,
  MapShapeMismatch,
  TrailingGarbage,
  Truncated,  // final line has no newline
  Io,
};

std::string_view to_string(ScenarioErrorKind kind);

class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(ScenarioErrorKind kind, std::size_t line, const std::string& detail);

  ScenarioErrorKind kind() const { return kind_; }
  std::size_t line() const { return line_; }  // 1-based, 0 when not tied to a line

 private:
  ScenarioErrorKind kind_;
  std::size_t line_;
};

// Scenario text format, every line '\n'-terminated:
//
//   FAULTSIM 1
//   width 20
//   height 20
//   seed 42
//   quake_threshold 100
//   target_quakes 3
//   nonfault_delta_min -5
//   nonfault_delta_max 5
//   fault_delta_min 0
//   fault_delta_max 10
//   delay_ms 1000
//   max_steps 100000
//   map
//   <height rows of width '0'/'1' characters>
//   end
//
// Keys appear in exactly this order and numbers are plain decimal without
// leading zeros or '+', so every scenario has one encoding.

std::string format_scenario(const Scenario& scenario);
void save_scenario(const Scenario& scenario, std::ostream& sink);
void save_scenario_file(const Scenario& scenario, const std::filesystem::path& path);

/// Throws ScenarioError; never anything else for any input.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(std::istream& source);
Scenario load_scenario_file(const std::filesystem::path& path);

/// Mean with exactly two decimals, rounding halves away from zero.
std::string format_mean(Stress sum, std::size_t count);

/// CSV: step,quakes,cumulative_quakes,max_stress,mean_stress
void write_stats(std::span<const StepReport> reports, std::ostream& sink);

}  // namespace faultsim
