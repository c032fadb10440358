#include "faultsim/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <climits>
#include <fstream>
#include <iostream>
#include <istream>
#include <ostream>
#include <string_view>
#include <thread>
#include <vector>

#include "faultsim/rasterize.hpp"
#include "faultsim/render.hpp"

namespace faultsim::cli {
namespace {

template <typename T>
std::optional<T> parse_number(std::string_view s) {
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

template <typename T>
T flag_value(std::string_view flag, const std::string& text, long double lo, long double hi) {
  auto v = parse_number<T>(text);
  if (!v || static_cast<long double>(*v) < lo || static_cast<long double>(*v) > hi) {
    throw CliError(CliErrorKind::MalformedValue,
                   "invalid value '" + text + "' for " + std::string(flag));
  }
  return *v;
}

constexpr long double kI64Max = static_cast<long double>(INT64_MAX);

}  // namespace

std::string usage() {
  return "usage: faultsim [options]\n"
         "\n"
         "Draw fault lines on a grid, then watch stress build until earthquakes occur.\n"
         "\n"
         "options:\n"
         "  --headless         run without the menu or rendering; write stats CSV\n"
         "  --scenario PATH    load config and fault map from a FAULTSIM 1 file\n"
         "  --out PATH         write per-step stats CSV to PATH\n"
         "  --seed N           64-bit seed (default: wall clock)\n"
         "  --width N          grid width, 1..1024 (default 20)\n"
         "  --height N         grid height, 1..1024 (default 20)\n"
         "  --quakes N         stop after N earthquakes (default 3)\n"
         "  --threshold N      stress at which a cell quakes (default 100)\n"
         "  --delay-ms N       pause between frames (default 1000)\n"
         "  --max-steps N      hard step limit (default 100000)\n"
         "  --no-color         plain output, no escape sequences\n"
         "  -h, --help         show this text\n"
         "\n"
         "exit codes: 0 ok, 1 usage or I/O error, 2 step limit hit before the quake target\n";
}

CliOptions parse_args(std::span<const std::string> args) {
  CLI::App app{"faultsim"};
  app.set_help_flag();
  bool help = false;
  bool headless = false;
  bool no_color = false;
  std::optional<std::string> scenario, out, seed, width, height, quakes, threshold, delay, steps;

  app.add_flag("-h,--help", help);
  app.add_flag("--headless", headless);
  app.add_flag("--no-color", no_color);
  auto opt = [&](const char* name, std::optional<std::string>& dest) {
    app.add_option(name, dest)->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  };
  opt("--scenario", scenario);
  opt("--out", out);
  opt("--seed", seed);
  opt("--width", width);
  opt("--height", height);
  opt("--quakes", quakes);
  opt("--threshold", threshold);
  opt("--delay-ms", delay);
  opt("--max-steps", steps);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ExtrasError& e) {
    throw CliError(CliErrorKind::UnknownFlag, e.what());
  } catch (const CLI::ArgumentMismatch& e) {
    throw CliError(CliErrorKind::MissingValue, e.what());
  } catch (const CLI::ParseError& e) {
    throw CliError(CliErrorKind::UnknownFlag, e.what());
  }

  CliOptions o;
  o.help = help;
  o.mode = headless ? Mode::Headless : Mode::Interactive;
  o.no_color = no_color;
  if (scenario) o.scenario_path = *scenario;
  if (out) o.out_path = *out;
  if (seed) o.seed = flag_value<std::uint64_t>("--seed", *seed, 0, static_cast<long double>(UINT64_MAX));
  if (width) o.width = flag_value<int>("--width", *width, 1, GridDims::kMaxSide);
  if (height) o.height = flag_value<int>("--height", *height, 1, GridDims::kMaxSide);
  if (quakes) o.quakes = flag_value<std::int64_t>("--quakes", *quakes, 1, kI64Max);
  if (threshold) {
    o.threshold = flag_value<std::int64_t>("--threshold", *threshold, 1,
                                           static_cast<long double>(SimConfig::kMaxQuakeThreshold));
  }
  if (delay) o.delay_ms = flag_value<std::int64_t>("--delay-ms", *delay, 0, kI64Max);
  if (steps) o.max_steps = flag_value<std::int64_t>("--max-steps", *steps, 1, kI64Max);

  if (!o.help && o.mode == Mode::Headless && !o.scenario_path && !(o.width && o.height)) {
    throw CliError(CliErrorKind::Usage,
                   "--headless needs --scenario PATH, or --width and --height for an empty map");
  }
  return o;
}

Scenario resolve_scenario(const CliOptions& opts, std::uint64_t clock_seed) {
  Scenario s;
  bool seeded = false;
  if (opts.scenario_path) {
    s = load_scenario_file(*opts.scenario_path);
    seeded = true;
    const int w = opts.width.value_or(s.cfg.dims.width());
    const int h = opts.height.value_or(s.cfg.dims.height());
    if (w != s.cfg.dims.width() || h != s.cfg.dims.height()) {
      throw CliError(CliErrorKind::Usage, "--width/--height disagree with the scenario's map");
    }
  } else {
    s.cfg.dims = GridDims(opts.width.value_or(GridDims::kDefaultSide),
                          opts.height.value_or(GridDims::kDefaultSide));
    s.faults = new_fault_map(s.cfg.dims);
  }
  if (opts.seed) {
    s.cfg.seed = *opts.seed;
  } else if (!seeded) {
    s.cfg.seed = clock_seed;
  }
  if (opts.quakes) s.cfg.target_quakes = *opts.quakes;
  if (opts.threshold) s.cfg.quake_threshold = *opts.threshold;
  if (opts.delay_ms) s.cfg.delay_ms = *opts.delay_ms;
  if (opts.max_steps) s.cfg.max_steps = *opts.max_steps;
  return s;
}

std::uint64_t wall_clock_seed() {
  return static_cast<std::uint64_t>(std::chrono::system_clock::now().time_since_epoch().count());
}

namespace {

std::string summary_line(const SimSummary& summary, const SimConfig& cfg) {
  return "steps=" + std::to_string(summary.total_steps) +
         " quakes=" + std::to_string(summary.total_quakes) + " seed=" + std::to_string(cfg.seed);
}

void write_stats_file(const std::filesystem::path& path, const SimSummary& summary) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ScenarioError(ScenarioErrorKind::Io, 0, "cannot open " + path.string());
  write_stats(summary.reports, file);
}

class Session {
 public:
  Session(const CliOptions& opts, Terminal& term, Scenario scenario)
      : opts_(opts),
        term_(term),
        scenario_(std::move(scenario)),
        style_{!opts.no_color},
        bands_(StressBands::thirds(scenario_.cfg.quake_threshold)) {}

  int loop() {
    term_.out << "Fault map " << width() << "x" << height() << ", seed " << scenario_.cfg.seed
              << ".\n";
    if (opts_.scenario_path) print_fault_map();
    for (;;) {
      term_.out << "\n1) vertical line  2) horizontal line  3) circle  4) point-to-point line"
                   "  5) start simulation  6) save scenario  7) quit\n";
      const auto choice = ask("Choice: ");
      if (!choice) return finish(kExitOk);
      switch (*choice) {
        case 1:
        case 2:
        case 3:
        case 4:
          if (!add_shape(static_cast<int>(*choice))) return finish(kExitOk);
          break;
        case 5:
          return simulate();
        case 6:
          if (!save()) return finish(kExitOk);
          break;
        case 7:
          term_.out << "Bye.\n";
          return finish(kExitOk);
        default:
          term_.out << "Unknown option " << *choice << "; choose 1-7.\n";
      }
      if (!term_.out) return kExitError;
    }
  }

 private:
  int width() const { return scenario_.cfg.dims.width(); }
  int height() const { return scenario_.cfg.dims.height(); }

  int finish(int code) {
    term_.out.flush();
    return term_.out ? code : kExitError;
  }

  // Re-prompts until an integer arrives; nullopt on end of input.
  std::optional<long long> ask(std::string_view prompt) {
    for (;;) {
      term_.out << prompt << std::flush;
      std::string line;
      if (!std::getline(term_.in, line)) {
        term_.out << "\n";
        return std::nullopt;
      }
      const auto first = line.find_first_not_of(" \t\r");
      const auto last = line.find_last_not_of(" \t\r");
      if (first != std::string::npos) {
        if (auto v = parse_number<long long>(std::string_view(line).substr(first, last - first + 1))) {
          return v;
        }
      }
      term_.out << "Please enter an integer.\n";
    }
  }

  std::optional<int> ask_coord(std::string_view prompt) {
    auto v = ask(prompt);
    if (!v) return std::nullopt;
    return static_cast<int>(std::clamp<long long>(*v, INT_MIN, INT_MAX));
  }

  void print_fault_map() { term_.out << render_fault_map(scenario_.faults, style_); }

  std::string grid_range() const {
    return "x in 0.." + std::to_string(width() - 1) + ", y in 0.." + std::to_string(height() - 1);
  }

  // False when input ran out mid-shape.
  bool add_shape(int choice) {
    FaultMap& map = scenario_.faults;
    DrawResult result;
    std::string error;
    switch (choice) {
      case 1: {
        auto x = ask_coord("x: ");
        if (!x) return false;
        result = draw_vertical(map, *x);
        error = "Error: x must be between 0 and " + std::to_string(width() - 1) + ".";
        break;
      }
      case 2: {
        auto y = ask_coord("y: ");
        if (!y) return false;
        result = draw_horizontal(map, *y);
        error = "Error: y must be between 0 and " + std::to_string(height() - 1) + ".";
        break;
      }
      case 3: {
        auto cx = ask_coord("center x: ");
        if (!cx) return false;
        auto cy = ask_coord("center y: ");
        if (!cy) return false;
        auto r = ask_coord("radius: ");
        if (!r) return false;
        result = draw_circle(map, *cx, *cy, *r);
        error = *r < 0 ? "Error: radius must not be negative."
                       : "Error: center must be inside the grid (" + grid_range() + ").";
        break;
      }
      default: {
        auto x0 = ask_coord("start x: ");
        if (!x0) return false;
        auto y0 = ask_coord("start y: ");
        if (!y0) return false;
        auto x1 = ask_coord("end x: ");
        if (!x1) return false;
        auto y1 = ask_coord("end y: ");
        if (!y1) return false;
        result = draw_segment(map, *x0, *y0, *x1, *y1);
        error = "Error: both endpoints must be inside the grid (" + grid_range() + ").";
        break;
      }
    }
    if (!result) {
      term_.out << error << "\n";
      return true;
    }
    term_.out << "Added " << result.cells_set << " fault cell"
              << (result.cells_set == 1 ? "" : "s") << ".\n";
    print_fault_map();
    return true;
  }

  bool save() {
    term_.out << "File: " << std::flush;
    std::string path;
    if (!std::getline(term_.in, path)) {
      term_.out << "\n";
      return false;
    }
    try {
      save_scenario_file(scenario_, path);
      term_.out << "Saved " << path << ".\n";
    } catch (const ScenarioError& e) {
      term_.out << "Error: " << e.what() << "\n";
    }
    return true;
  }

  int simulate() {
    const SimConfig& cfg = scenario_.cfg;
    term_.out << "Fault map:\n";
    print_fault_map();
    term_.out << "Initial stress map:\n"
              << render_stress_map(new_stress_map(cfg.dims), bands_, cfg.quake_threshold, style_);

    const auto delay = std::chrono::milliseconds(cfg.delay_ms);
    auto show = [&](const StepReport& report, const StressMap& stress) {
      if (style_.color_enabled) {
        term_.out << ansi::kClearScreen;
      } else {
        term_.out << "\n";
      }
      term_.out << "Step " << report.step_index << "\n"
                << render_stress_map(quake_frame(stress, report, cfg.quake_threshold), bands_,
                                     cfg.quake_threshold, style_);
      for (const Cell& c : report.quaked_cells) {
        term_.out << "EARTHQUAKE at (" << c.x << ", " << c.y << ")!\n";
      }
      term_.out.flush();
      const bool last =
          report.cumulative_quakes >= cfg.target_quakes || report.step_index >= cfg.max_steps;
      if (!last && delay.count() > 0 && term_.sleep) term_.sleep(delay);
    };
    const SimSummary summary = run(scenario_.faults, cfg, show);

    if (summary.hit_max_steps) {
      term_.out << "Stopped at the step limit (" << cfg.max_steps << ") with "
                << summary.total_quakes << " of " << cfg.target_quakes << " earthquakes.\n";
    } else {
      term_.out << "Reached " << summary.total_quakes << " earthquake"
                << (summary.total_quakes == 1 ? "" : "s") << ".\n";
    }
    term_.out << summary_line(summary, cfg) << "\n";
    if (opts_.out_path) {
      try {
        write_stats_file(*opts_.out_path, summary);
      } catch (const ScenarioError& e) {
        term_.out << "Error: " << e.what() << "\n";
        return finish(kExitError);
      }
    }
    return finish(summary.hit_max_steps ? kExitMaxSteps : kExitOk);
  }

  const CliOptions& opts_;
  Terminal& term_;
  Scenario scenario_;
  RenderStyle style_;
  StressBands bands_;
};

}  // namespace

int run_interactive(const CliOptions& opts, Terminal& term, std::uint64_t clock_seed) {
  Session session(opts, term, resolve_scenario(opts, clock_seed));
  return session.loop();
}

int run_headless(const CliOptions& opts, std::ostream& out, std::ostream& err,
                 std::uint64_t clock_seed) {
  const Scenario scenario = resolve_scenario(opts, clock_seed);
  const SimSummary summary = run(scenario.faults, scenario.cfg);
  if (opts.out_path) {
    write_stats_file(*opts.out_path, summary);
    out << summary_line(summary, scenario.cfg) << "\n";
  } else {
    write_stats(summary.reports, out);
    err << summary_line(summary, scenario.cfg) << "\n";
  }
  out.flush();
  if (!out) return kExitError;
  return summary.hit_max_steps ? kExitMaxSteps : kExitOk;
}

int entry(std::span<const std::string> args, std::istream& in, std::ostream& out,
         std::ostream& err) {
  CliOptions opts;
  try {
    opts = parse_args(args);
  } catch (const CliError& e) {
    err << "faultsim: " << e.what() << "\n\n" << usage();
    return kExitError;
  }
  if (opts.help) {
    out << usage();
    return kExitOk;
  }
  try {
    if (opts.mode == Mode::Headless) return run_headless(opts, out, err, wall_clock_seed());
    Terminal term{in, out, [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); }};
    return run_interactive(opts, term, wall_clock_seed());
  } catch (const ScenarioError& e) {
    err << "faultsim: " << e.what() << "\n";
  } catch (const CliError& e) {
    err << "faultsim: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << "faultsim: " << e.what() << "\n";
  }
  return kExitError;
}

}  // namespace faultsim::cli
