// Acceptance suite: one line per criterion, non-zero exit if any fails.
//
//   faultsim_acceptance            run everything
//   FAULTSIM_UPDATE_GOLDEN=1 ...   rewrite the interactive transcript golden

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "faultsim/cli.hpp"
#include "faultsim/dynamics.hpp"
#include "faultsim/rasterize.hpp"
#include "faultsim/render.hpp"
#include "faultsim/scenario_io.hpp"
#include "oracles.hpp"

using namespace faultsim;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path scratch_dir() {
  auto dir = fs::temp_directory_path() / ("faultsim_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

// 1. Exhaustive segment/oracle agreement on 16x16, < 5 s.
Outcome segment_oracle() {
  Outcome out;
  const auto t0 = Clock::now();
  long mismatches = 0;
  long pairs = 0;
  for (int x0 = 0; x0 < 16; ++x0) {
    for (int y0 = 0; y0 < 16; ++y0) {
      for (int x1 = 0; x1 < 16; ++x1) {
        for (int y1 = 0; y1 < 16; ++y1) {
          FaultMap map = new_fault_map(GridDims(16, 16));
          if (!draw_segment(map, x0, y0, x1, y1)) {
            ++mismatches;
            continue;
          }
          ++pairs;
          if (oracle::cells_of(map) != oracle::segment(x0, y0, x1, y1)) ++mismatches;
        }
      }
    }
  }
  const double secs = seconds_since(t0);
  out.detail = std::to_string(pairs) + " pairs, " + std::to_string(mismatches) +
               " mismatches, " + std::to_string(secs) + " s";
  if (pairs != 65536) out.fail("expected 65536 pairs, got " + std::to_string(pairs));
  if (mismatches != 0) out.fail(std::to_string(mismatches) + " mismatches");
  if (secs >= 5.0) out.fail("took " + std::to_string(secs) + " s");
  return out;
}

// 2. Circles r in [0,12] centered on a 31x31 grid: oracle, symmetry, r=3 -> 16.
Outcome circle_correctness() {
  Outcome out;
  for (int r = 0; r <= 12; ++r) {
    FaultMap map = new_fault_map(GridDims(31, 31));
    draw_circle(map, 15, 15, r);
    const auto cells = oracle::cells_of(map);
    if (cells != oracle::circle(15, 15, r)) out.fail("oracle mismatch at r=" + std::to_string(r));
    for (auto [x, y] : cells) {
      const int a = x - 15;
      const int b = y - 15;
      for (auto [p, q] : {std::pair{a, b}, std::pair{b, a}}) {
        for (int sp : {1, -1}) {
          for (int sq : {1, -1}) {
            if (!cells.count({15 + sp * p, 15 + sq * q})) {
              out.fail("asymmetric at r=" + std::to_string(r));
            }
          }
        }
      }
    }
    if (r == 3 && cells.size() != 16) out.fail("r=3 gave " + std::to_string(cells.size()));
  }
  if (out.pass) out.detail = "r=0..12 match oracle, 8-fold symmetric, r=3 -> 16 cells";
  return out;
}

// 3. Clipping law over 1000 random circles; out-of-bounds writes would throw.
Outcome clipping_law() {
  Outcome out;
  std::mt19937_64 gen(3);
  int cropped = 0;
  for (int i = 0; i < 1000; ++i) {
    const int w = std::uniform_int_distribution<int>(1, 40)(gen);
    const int h = std::uniform_int_distribution<int>(1, 40)(gen);
    const int cx = std::uniform_int_distribution<int>(0, w - 1)(gen);
    const int cy = std::uniform_int_distribution<int>(0, h - 1)(gen);
    const int r = std::uniform_int_distribution<int>(0, 2 * std::max(w, h))(gen);

    FaultMap small = new_fault_map(GridDims(w, h));
    try {
      draw_circle(small, cx, cy, r);
    } catch (const std::out_of_range&) {
      out.fail("out-of-bounds write");
      continue;
    }
    // Same circle on a grid big enough to hold it whole, shifted by `pad`.
    const int pad = r + 1;
    FaultMap big = new_fault_map(GridDims(w + 2 * pad, h + 2 * pad));
    draw_circle(big, cx + pad, cy + pad, r);
    oracle::CellSet expected;
    for (auto [x, y] : oracle::cells_of(big)) {
      const int sx = x - pad;
      const int sy = y - pad;
      if (sx >= 0 && sx < w && sy >= 0 && sy < h) expected.insert({sx, sy});
    }
    const auto got = oracle::cells_of(small);
    if (got != expected) out.fail("clip mismatch on trial " + std::to_string(i));
    if (got.size() < oracle::cells_of(big).size()) ++cropped;
  }
  if (out.pass) out.detail = "1000 circles, " + std::to_string(cropped) + " cropped, no OOB writes";
  return out;
}

// 4. 100 random configs x 200 steps: stress >= 0, quaked cells read 0.
Outcome non_negativity_and_reset() {
  Outcome out;
  std::mt19937_64 gen(4);
  long quakes = 0;
  for (int run = 0; run < 100; ++run) {
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); };
    SimConfig cfg;
    cfg.dims = GridDims(pick(1, 30), pick(1, 30));
    cfg.seed = gen();
    cfg.quake_threshold = pick(1, 120);
    cfg.nonfault_delta_min = pick(-15, 3);
    cfg.nonfault_delta_max = cfg.nonfault_delta_min + pick(0, 20);
    cfg.fault_delta_min = pick(-3, 5);
    cfg.fault_delta_max = cfg.fault_delta_min + pick(0, 15);
    FaultMap faults = new_fault_map(cfg.dims);
    draw_vertical(faults, pick(0, cfg.dims.width() - 1));
    draw_circle(faults, pick(0, cfg.dims.width() - 1), pick(0, cfg.dims.height() - 1),
                pick(0, 12));

    StressMap stress = new_stress_map(cfg.dims);
    SplitMix64 rng(cfg.seed);
    std::int64_t cumulative = 0;
    for (int s = 1; s <= 200; ++s) {
      const StepReport report = step(stress, faults, cfg, rng, cumulative, s);
      cumulative = report.cumulative_quakes;
      quakes += static_cast<long>(report.quakes_this_step());
      for (Stress v : stress.data()) {
        if (v < 0) out.fail("negative stress in run " + std::to_string(run));
      }
      for (const Cell& c : report.quaked_cells) {
        if (stress.get(c.x, c.y) != 0) out.fail("quaked cell not reset in run " + std::to_string(run));
      }
    }
  }
  if (out.pass) out.detail = "100 runs x 200 steps, " + std::to_string(quakes) + " quakes observed";
  return out;
}

// 5. Headless replay is byte-identical; SplitMix64 seed-0 outputs.
Outcome determinism() {
  Outcome out;
  SplitMix64 rng(0);
  oracle::SplitMixRecurrence ref{0};
  const auto first = rng.next();
  const auto second = rng.next();
  if (first != oracle::kSeed0First || first != ref.next()) out.fail("seed 0 first output");
  if (second != oracle::kSeed0Second || second != ref.next()) out.fail("seed 0 second output");

  const fs::path dir = scratch_dir();
  Scenario s;
  s.cfg.seed = 7;
  s.faults = new_fault_map(s.cfg.dims);
  draw_vertical(s.faults, 10);
  draw_circle(s.faults, 5, 5, 4);
  save_scenario_file(s, dir / "replay.txt");
  std::string csv[2];
  for (int i = 0; i < 2; ++i) {
    const fs::path out_csv = dir / ("replay" + std::to_string(i) + ".csv");
    const std::vector<std::string> args{"--headless", "--scenario", (dir / "replay.txt").string(),
                                        "--out", out_csv.string()};
    std::istringstream in;
    std::ostringstream stdout_text, stderr_text;
    if (cli::entry(args, in, stdout_text, stderr_text) != cli::kExitOk) out.fail("headless exit");
    csv[i] = slurp(out_csv);
  }
  fs::remove_all(dir);
  if (csv[0].empty() || csv[0] != csv[1]) out.fail("CSV differs between runs");
  if (out.pass) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "seed0 -> %016llX, %016llX; CSV %zu bytes identical",
                  static_cast<unsigned long long>(first), static_cast<unsigned long long>(second),
                  csv[0].size());
    out.detail = buf;
  }
  return out;
}

// 6. Defaults with one full vertical fault, 100 seeds: all reach 3 quakes,
// median steps to first quake in [15, 30], each run < 1 s.
Outcome termination_pacing() {
  Outcome out;
  std::vector<std::int64_t> first_quake;
  double slowest = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    SimConfig cfg;
    cfg.seed = seed;
    FaultMap faults = new_fault_map(cfg.dims);
    draw_vertical(faults, cfg.dims.width() / 2);
    const auto t0 = Clock::now();
    const SimSummary summary = run(faults, cfg);
    slowest = std::max(slowest, seconds_since(t0));
    if (summary.hit_max_steps) out.fail("seed " + std::to_string(seed) + " hit max_steps");
    for (const StepReport& r : summary.reports) {
      if (r.quakes_this_step() > 0) {
        first_quake.push_back(r.step_index);
        break;
      }
    }
  }
  if (first_quake.size() != 100) {
    out.fail("not every run quaked");
    return out;
  }
  std::sort(first_quake.begin(), first_quake.end());
  const double median = (first_quake[49] + first_quake[50]) / 2.0;
  if (median < 15 || median > 30) out.fail("median first quake " + std::to_string(median));
  if (slowest >= 1.0) out.fail("slowest run " + std::to_string(slowest) + " s");
  char buf[160];
  std::snprintf(buf, sizeof buf, "median first quake at step %.1f (range %lld..%lld), slowest run %.4f s",
                median, static_cast<long long>(first_quake.front()),
                static_cast<long long>(first_quake.back()), slowest);
  if (out.pass) out.detail = buf;
  return out;
}

// 7. Render goldens and ANSI stripping.
Outcome render_goldens() {
  Outcome out;
  FaultMap fm = new_fault_map(GridDims(2, 1));
  fm.set(0, 0, 1);
  if (render_fault_map(fm, {true}) != "\x1b[31m1\x1b[0m 0\n") out.fail("red 1 golden");
  StressMap low = new_stress_map(GridDims(1, 1));
  if (render_stress_map(low, {}, 100, {true}) != "\x1b[32m  0\x1b[0m\n") out.fail("green 0 golden");
  StressMap quake = new_stress_map(GridDims(1, 1));
  quake.set(0, 0, 100);
  if (render_stress_map(quake, {}, 100, {true}) != "\x1b[34m100\x1b[0m\n") out.fail("blue 100 golden");

  std::mt19937 gen(7);
  for (int i = 0; i < 200; ++i) {
    const GridDims dims(std::uniform_int_distribution<int>(1, 25)(gen),
                        std::uniform_int_distribution<int>(1, 25)(gen));
    StressMap stress = new_stress_map(dims);
    FaultMap faults = new_fault_map(dims);
    for (auto& v : stress.data()) v = std::uniform_int_distribution<Stress>(0, 1200)(gen);
    for (auto& f : faults.data()) f = std::uniform_int_distribution<int>(0, 1)(gen);
    if (ansi::strip(render_stress_map(stress, {}, 100, {true})) !=
        render_stress_map(stress, {}, 100, {false})) {
      out.fail("stress strip mismatch");
    }
    if (ansi::strip(render_fault_map(faults, {true})) != render_fault_map(faults, {false})) {
      out.fail("fault strip mismatch");
    }
  }
  if (out.pass) out.detail = "3 goldens bit-exact, 200 random maps strip to plain";
  return out;
}

// 8. Round trip over 10000 random scenarios; fuzzed bytes never crash.
Outcome scenario_fuzz() {
  Outcome out;
  std::mt19937_64 gen(8);
  auto pick = [&](long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(gen);
  };
  std::vector<std::string> corpus;
  for (int i = 0; i < 10'000; ++i) {
    Scenario s;
    s.cfg.dims = GridDims(static_cast<int>(pick(1, 32)), static_cast<int>(pick(1, 32)));
    s.cfg.seed = gen();
    s.cfg.quake_threshold = pick(1, SimConfig::kMaxQuakeThreshold);
    s.cfg.target_quakes = pick(1, 1'000'000);
    s.cfg.nonfault_delta_min = static_cast<int>(pick(-1000, 1000));
    s.cfg.nonfault_delta_max = static_cast<int>(pick(s.cfg.nonfault_delta_min, 2000));
    s.cfg.fault_delta_min = static_cast<int>(pick(-1000, 1000));
    s.cfg.fault_delta_max = static_cast<int>(pick(s.cfg.fault_delta_min, 2000));
    s.cfg.delay_ms = pick(0, 10'000);
    s.cfg.max_steps = pick(1, 10'000'000);
    s.faults = new_fault_map(s.cfg.dims);
    for (auto& c : s.faults.data()) c = pick(0, 4) == 0;
    const std::string bytes = format_scenario(s);
    try {
      if (!(parse_scenario(bytes) == s)) out.fail("round trip mismatch");
    } catch (const ScenarioError& e) {
      out.fail(std::string("valid scenario rejected: ") + e.what());
    }
    if (i < 200) corpus.push_back(bytes);
  }

  // Mutation fuzzing: byte flips, insertions, deletions, truncations, plus
  // pure random noise. Any accepted input must re-serialize to itself.
  long accepted = 0;
  long rejected = 0;
  const int kFuzzCases = 50'000;
  for (int i = 0; i < kFuzzCases; ++i) {
    std::string bytes;
    if (i % 10 == 0) {
      bytes.resize(static_cast<std::size_t>(pick(0, 300)));
      for (auto& c : bytes) c = static_cast<char>(pick(0, 255));
    } else {
      bytes = corpus[static_cast<std::size_t>(pick(0, static_cast<long long>(corpus.size()) - 1))];
      for (int m = static_cast<int>(pick(1, 4)); m > 0 && !bytes.empty(); --m) {
        const auto at = static_cast<std::size_t>(pick(0, static_cast<long long>(bytes.size()) - 1));
        switch (pick(0, 3)) {
          case 0:
            bytes[at] = static_cast<char>(pick(0, 255));
            break;
          case 1:
            bytes.insert(at, 1, "01-\n 9x"[pick(0, 6)]);
            break;
          case 2:
            bytes.erase(at, 1);
            break;
          default:
            bytes.resize(at);
        }
      }
    }
    try {
      const Scenario s = parse_scenario(bytes);
      ++accepted;
      if (format_scenario(s) != bytes) out.fail("accepted non-canonical input");
    } catch (const ScenarioError&) {
      ++rejected;
    } catch (...) {
      out.fail("untyped exception on fuzz input");
    }
  }
  if (out.pass) {
    out.detail = "10000 round trips; " + std::to_string(kFuzzCases) + " fuzz inputs (" +
                 std::to_string(accepted) + " accepted, " + std::to_string(rejected) +
                 " typed errors)";
  }
  return out;
}

// 9. Scripted interactive session against the golden transcript.
Outcome interactive_transcript() {
  Outcome out;
  const fs::path golden = fs::path(FAULTSIM_GOLDEN_DIR) / "interactive_session.txt";
  const std::vector<std::string> args{"--width", "10", "--height", "10", "--seed", "2024",
                                      "--quakes", "1", "--delay-ms", "0"};
  // vertical at 5, vertical at 12 (rejected), circle (5,5) r 3, start.
  std::istringstream in("1\n5\n1\n12\n3\n5\n5\n3\n5\n");
  std::ostringstream text;
  int sleeps = 0;
  cli::Terminal term{in, text, [&](std::chrono::milliseconds) { ++sleeps; }};
  const int code = cli::run_interactive(cli::parse_args(args), term, 0);
  const std::string transcript = text.str();

  if (const char* update = std::getenv("FAULTSIM_UPDATE_GOLDEN"); update && *update == '1') {
    std::ofstream(golden, std::ios::binary) << transcript;
  }
  if (code != cli::kExitOk) out.fail("exit code " + std::to_string(code));
  if (transcript.find("Error: x must be between 0 and 9.") == std::string::npos) {
    out.fail("missing range error message");
  }
  if (transcript.find("EARTHQUAKE at (") == std::string::npos) out.fail("no EARTHQUAKE line");
  if (sleeps != 0) out.fail("slept with delay 0");
  const std::string expected = slurp(golden);
  if (expected.empty()) {
    out.fail("golden file missing: " + golden.string());
  } else if (transcript != expected) {
    out.fail("transcript differs from golden");
  }
  if (out.pass) {
    std::size_t quakes = 0;
    for (auto at = transcript.find("EARTHQUAKE at ("); at != std::string::npos;
         at = transcript.find("EARTHQUAKE at (", at + 1)) {
      ++quakes;
    }
    out.detail = "transcript matches golden (" + std::to_string(transcript.size()) + " bytes, " +
                 std::to_string(quakes) + " EARTHQUAKE line(s))";
  }
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> check;
  };
  const Criterion criteria[] = {
      {"AC1 segment oracle equivalence", segment_oracle},
      {"AC2 circle correctness", circle_correctness},
      {"AC3 clipping law", clipping_law},
      {"AC4 stress non-negativity and reset", non_negativity_and_reset},
      {"AC5 determinism and replay", determinism},
      {"AC6 termination pacing", termination_pacing},
      {"AC7 render goldens", render_goldens},
      {"AC8 scenario fuzz and round trip", scenario_fuzz},
      {"AC9 interactive transcript", interactive_transcript},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str());
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed,
              std::size(criteria));
  return failed == 0 ? 0 : 1;
}
