#pragma once

#include <string>
#include <string_view>

#include "faultsim/dynamics.hpp"
#include "faultsim/grid.hpp"

namespace faultsim {

namespace ansi {
inline constexpr std::string_view kReset = "\x1b[0m";
inline constexpr std::string_view kRed = "\x1b[31m";
inline constexpr std::string_view kGreen = "\x1b[32m";
inline constexpr std::string_view kYellow = "\x1b[33m";
inline constexpr std::string_view kBlue = "\x1b[34m";
inline constexpr std::string_view kClearScreen = "\x1b[2J\x1b[H";

/// Removes CSI sequences (ESC '[' params final-byte).
std::string strip(std::string_view text);
}  // namespace ansi

enum class StressBand { Low, Medium, High, Quake };

/// Low = [0, low_max], Medium = (low_max, med_max], High = (med_max, threshold),
/// Quake = [threshold, inf).
struct StressBands {
  Stress low_max = 33;
  Stress med_max = 66;

  // Thirds of the threshold; 33/66 for the default threshold of 100.
  static StressBands thirds(Stress threshold) { return {threshold / 3, 2 * threshold / 3}; }
};

struct RenderStyle {
  bool color_enabled = true;
};

StressBand classify_stress(Stress value, const StressBands& bands, Stress threshold);

/// One line per row, glyphs separated by a space: red "1" for faults, bare "0"
/// otherwise.
std::string render_fault_map(const FaultMap& map, const RenderStyle& style);

/// One line per row; each cell is a right-aligned 3-character number (capped
/// at 999) in its band color, cells separated by a space.
std::string render_stress_map(const StressMap& stress, const StressBands& bands,
                              Stress threshold, const RenderStyle& style);

/// The map a simulation frame displays: post-step stress with every quaked
/// cell shown at the threshold, so it renders in the quake color.
StressMap quake_frame(const StressMap& stress, const StepReport& report, Stress threshold);

}  // namespace faultsim
