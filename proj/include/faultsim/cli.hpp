#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

#include "faultsim/scenario_io.hpp"

namespace faultsim::cli {

enum class Mode { Interactive, Headless };

struct CliOptions {
  Mode mode = Mode::Interactive;
  std::optional<std::filesystem::path> scenario_path;
  std::optional<std::filesystem::path> out_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> width;
  std::optional<int> height;
  std::optional<std::int64_t> quakes;
  std::optional<std::int64_t> threshold;
  std::optional<std::int64_t> delay_ms;
  std::optional<std::int64_t> max_steps;
  bool no_color = false;
  bool help = false;
};

enum class CliErrorKind { UnknownFlag, MissingValue, MalformedValue, Usage };

class CliError : public std::runtime_error {
 public:
  CliError(CliErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  CliErrorKind kind() const { return kind_; }

 private:
  CliErrorKind kind_;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitMaxSteps = 2;

std::string usage();

/// `args` excludes the program name. Throws CliError.
CliOptions parse_args(std::span<const std::string> args);

/// Defaults, then the scenario file, then explicit flags. The seed falls back
/// to `clock_seed` only when neither the flags nor a file provide one.
Scenario resolve_scenario(const CliOptions& opts, std::uint64_t clock_seed);

std::uint64_t wall_clock_seed();

struct Terminal {
  std::istream& in;
  std::ostream& out;
  std::function<void(std::chrono::milliseconds)> sleep;
};

/// The menu loop. Never exits on malformed input; returns the process exit code.
int run_interactive(const CliOptions& opts, Terminal& term, std::uint64_t clock_seed);

/// Runs without rendering or delay. Stats CSV goes to --out or `out`; the
/// summary line goes to `out` when --out is set and to `err` otherwise.
int run_headless(const CliOptions& opts, std::ostream& out, std::ostream& err,
                 std::uint64_t clock_seed);

/// Entry point used by the executable.
int entry(std::span<const std::string> args, std::istream& in, std::ostream& out,
         std::ostream& err);

}  // namespace faultsim::cli
