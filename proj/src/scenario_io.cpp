#include "faultsim/scenario_io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <iterator>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <system_error>

namespace faultsim {

std::string_view to_string(ScenarioErrorKind kind) {
  switch (kind) {
    case ScenarioErrorKind::BadMagic:
      return "BadMagic";
    case ScenarioErrorKind::MissingKey:
      return "MissingKey";
    case ScenarioErrorKind::UnknownKey:
      return "UnknownKey";
    case ScenarioErrorKind::MalformedValue:
      return "MalformedValue";
    case ScenarioErrorKind::MapShapeMismatch:
      return "MapShapeMismatch";
    case ScenarioErrorKind::TrailingGarbage:
      return "TrailingGarbage";
    case ScenarioErrorKind::Truncated:
      return "Truncated";
    case ScenarioErrorKind::Io:
      return "Io";
  }
  return "Unknown";
}

namespace {

std::string describe(ScenarioErrorKind kind, std::size_t line, const std::string& detail) {
  std::string msg(to_string(kind));
  if (line > 0) msg += " at line " + std::to_string(line);
  if (!detail.empty()) msg += ": " + detail;
  return msg;
}

}  // namespace

ScenarioError::ScenarioError(ScenarioErrorKind kind, std::size_t line, const std::string& detail)
    : std::runtime_error(describe(kind, line, detail)), kind_(kind), line_(line) {}

namespace {

constexpr std::string_view kMagic = "FAULTSIM 1";

constexpr std::array<std::string_view, 11> kKeys = {
    "width",           "height",          "seed",           "quake_threshold",
    "target_quakes",   "nonfault_delta_min", "nonfault_delta_max", "fault_delta_min",
    "fault_delta_max", "delay_ms",        "max_steps"};

bool is_known_key(std::string_view key) {
  for (auto k : kKeys) {
    if (k == key) return true;
  }
  return false;
}

class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  // Next '\n'-terminated line without its terminator; nullopt at clean EOF.
  std::optional<std::string_view> next() {
    if (pos_ == text_.size()) return std::nullopt;
    const auto nl = text_.find('\n', pos_);
    ++line_;
    if (nl == std::string_view::npos) {
      throw ScenarioError(ScenarioErrorKind::Truncated, line_, "missing final newline");
    }
    auto line = text_.substr(pos_, nl - pos_);
    pos_ = nl + 1;
    return line;
  }

  std::size_t line() const { return line_; }
  bool at_end() const { return pos_ == text_.size(); }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 0;
};

// Canonical decimal: "0", or an optional '-' then digits without a leading
// zero. "-0" is not canonical.
template <typename T>
std::optional<T> parse_canonical(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::size_t digits_at = 0;
  if (s[0] == '-') {
    if constexpr (!std::numeric_limits<T>::is_signed) return std::nullopt;
    digits_at = 1;
  }
  const auto digits = s.substr(digits_at);
  if (digits.empty()) return std::nullopt;
  if (digits[0] == '0' && (digits.size() > 1 || digits_at == 1)) return std::nullopt;
  for (char c : digits) {
    if (c < '0' || c > '9') return std::nullopt;
  }
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

template <typename T>
T parse_value(std::string_view key, std::string_view text, long double lo, long double hi,
              std::size_t line) {
  auto v = parse_canonical<T>(text);
  if (!v || static_cast<long double>(*v) < lo || static_cast<long double>(*v) > hi) {
    throw ScenarioError(ScenarioErrorKind::MalformedValue, line,
                        std::string(key) + " has invalid value '" + std::string(text) + "'");
  }
  return *v;
}

}  // namespace

std::string format_scenario(const Scenario& s) {
  const SimConfig& c = s.cfg;
  std::string out;
  out.reserve(256 + s.faults.dims().area() + static_cast<std::size_t>(s.faults.height()));
  out.append(kMagic).push_back('\n');
  auto kv = [&](std::string_view key, auto value) {
    out.append(key).append(" ").append(std::to_string(value)).push_back('\n');
  };
  kv("width", c.dims.width());
  kv("height", c.dims.height());
  kv("seed", c.seed);
  kv("quake_threshold", c.quake_threshold);
  kv("target_quakes", c.target_quakes);
  kv("nonfault_delta_min", c.nonfault_delta_min);
  kv("nonfault_delta_max", c.nonfault_delta_max);
  kv("fault_delta_min", c.fault_delta_min);
  kv("fault_delta_max", c.fault_delta_max);
  kv("delay_ms", c.delay_ms);
  kv("max_steps", c.max_steps);
  out.append("map\n");
  for (int y = 0; y < s.faults.height(); ++y) {
    for (int x = 0; x < s.faults.width(); ++x) {
      out.push_back(is_fault(s.faults, x, y) ? '1' : '0');
    }
    out.push_back('\n');
  }
  out.append("end\n");
  return out;
}

void save_scenario(const Scenario& scenario, std::ostream& sink) {
  const std::string text = format_scenario(scenario);
  sink.write(text.data(), static_cast<std::streamsize>(text.size()));
  sink.flush();
  if (!sink) throw ScenarioError(ScenarioErrorKind::Io, 0, "write failed");
}

void save_scenario_file(const Scenario& scenario, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ScenarioError(ScenarioErrorKind::Io, 0, "cannot open " + path.string());
  save_scenario(scenario, out);
}

Scenario parse_scenario(std::string_view text) {
  if (text.substr(0, kMagic.size() + 1) != std::string(kMagic) + "\n") {
    throw ScenarioError(ScenarioErrorKind::BadMagic, 1, "expected 'FAULTSIM 1'");
  }
  LineReader lines(text);
  lines.next();

  std::array<std::string_view, kKeys.size()> values;
  for (std::size_t k = 0; k < kKeys.size(); ++k) {
    const auto line = lines.next();
    if (!line) {
      throw ScenarioError(ScenarioErrorKind::MissingKey, lines.line() + 1,
                          "expected '" + std::string(kKeys[k]) + "'");
    }
    const auto space = line->find(' ');
    const auto key = line->substr(0, space);
    if (key == kKeys[k]) {
      if (space == std::string_view::npos) {
        throw ScenarioError(ScenarioErrorKind::MalformedValue, lines.line(),
                            std::string(key) + " has no value");
      }
      values[k] = line->substr(space + 1);
      continue;
    }
    if (is_known_key(key) || key == "map") {
      throw ScenarioError(ScenarioErrorKind::MissingKey, lines.line(),
                          "expected '" + std::string(kKeys[k]) + "'");
    }
    throw ScenarioError(ScenarioErrorKind::UnknownKey, lines.line(),
                        "unknown key '" + std::string(key) + "'");
  }

  constexpr long double kIntMin = std::numeric_limits<int>::min();
  constexpr long double kIntMax = std::numeric_limits<int>::max();
  constexpr long double kI64Max = static_cast<long double>(std::numeric_limits<std::int64_t>::max());
  const std::size_t first = 2;  // line number of the first key
  auto line_of = [&](std::size_t k) { return first + k; };

  const int width = parse_value<int>(kKeys[0], values[0], 1, GridDims::kMaxSide, line_of(0));
  const int height = parse_value<int>(kKeys[1], values[1], 1, GridDims::kMaxSide, line_of(1));
  SimConfig cfg;
  cfg.dims = GridDims(width, height);
  cfg.seed = parse_value<std::uint64_t>(kKeys[2], values[2], 0,
                                        static_cast<long double>(UINT64_MAX), line_of(2));
  cfg.quake_threshold = parse_value<std::int64_t>(
      kKeys[3], values[3], 1, static_cast<long double>(SimConfig::kMaxQuakeThreshold), line_of(3));
  cfg.target_quakes = parse_value<std::int64_t>(kKeys[4], values[4], 1, kI64Max, line_of(4));
  cfg.nonfault_delta_min = parse_value<int>(kKeys[5], values[5], kIntMin, kIntMax, line_of(5));
  cfg.nonfault_delta_max = parse_value<int>(kKeys[6], values[6], kIntMin, kIntMax, line_of(6));
  cfg.fault_delta_min = parse_value<int>(kKeys[7], values[7], kIntMin, kIntMax, line_of(7));
  cfg.fault_delta_max = parse_value<int>(kKeys[8], values[8], kIntMin, kIntMax, line_of(8));
  cfg.delay_ms = parse_value<std::int64_t>(kKeys[9], values[9], 0, kI64Max, line_of(9));
  cfg.max_steps = parse_value<std::int64_t>(kKeys[10], values[10], 1, kI64Max, line_of(10));
  if (cfg.nonfault_delta_min > cfg.nonfault_delta_max) {
    throw ScenarioError(ScenarioErrorKind::MalformedValue, line_of(6),
                        "nonfault_delta_max below nonfault_delta_min");
  }
  if (cfg.fault_delta_min > cfg.fault_delta_max) {
    throw ScenarioError(ScenarioErrorKind::MalformedValue, line_of(8),
                        "fault_delta_max below fault_delta_min");
  }

  const auto map_line = lines.next();
  if (!map_line || *map_line != "map") {
    throw ScenarioError(ScenarioErrorKind::MapShapeMismatch, lines.line(), "expected 'map'");
  }

  Scenario scenario{cfg, new_fault_map(cfg.dims)};
  for (int y = 0; y < height; ++y) {
    const auto row = lines.next();
    if (!row || row->size() != static_cast<std::size_t>(width)) {
      throw ScenarioError(ScenarioErrorKind::MapShapeMismatch, lines.line(),
                          "map row " + std::to_string(y) + " must have " + std::to_string(width) +
                              " cells");
    }
    for (int x = 0; x < width; ++x) {
      const char c = (*row)[static_cast<std::size_t>(x)];
      if (c != '0' && c != '1') {
        throw ScenarioError(ScenarioErrorKind::MapShapeMismatch, lines.line(),
                            "map cells must be '0' or '1'");
      }
      scenario.faults.set(x, y, c == '1');
    }
  }

  const auto end_line = lines.next();
  if (!end_line || *end_line != "end") {
    throw ScenarioError(ScenarioErrorKind::MapShapeMismatch, lines.line(), "expected 'end'");
  }
  if (!lines.at_end()) {
    throw ScenarioError(ScenarioErrorKind::TrailingGarbage, lines.line() + 1,
                        "content after 'end'");
  }
  return scenario;
}

Scenario load_scenario(std::istream& source) {
  std::string text{std::istreambuf_iterator<char>(source), std::istreambuf_iterator<char>()};
  if (source.bad()) throw ScenarioError(ScenarioErrorKind::Io, 0, "read failed");
  return parse_scenario(text);
}

Scenario load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError(ScenarioErrorKind::Io, 0, "cannot open " + path.string());
  return load_scenario(in);
}

std::string format_mean(Stress sum, std::size_t count) {
  const bool negative = sum < 0;
  // Magnitude as unsigned so INT64_MIN does not overflow.
  const std::uint64_t mag = negative ? 0 - static_cast<std::uint64_t>(sum)
                                     : static_cast<std::uint64_t>(sum);
  const std::uint64_t whole = mag / count;
  const std::uint64_t rem = mag % count;
  // rem/count scaled to hundredths, halves rounded up in magnitude.
  std::uint64_t hundredths = whole * 100 + (200 * rem + count) / (2 * count);
  std::string frac = std::to_string(hundredths % 100);
  if (frac.size() < 2) frac.insert(0, "0");
  std::string out = negative && hundredths != 0 ? "-" : "";
  out += std::to_string(hundredths / 100) + "." + frac;
  return out;
}

void write_stats(std::span<const StepReport> reports, std::ostream& sink) {
  std::ostringstream csv;
  csv << "step,quakes,cumulative_quakes,max_stress,mean_stress\n";
  for (const StepReport& r : reports) {
    csv << r.step_index << ',' << r.quakes_this_step() << ',' << r.cumulative_quakes << ','
        << r.max_stress << ',' << format_mean(r.stress_sum, r.cell_count) << '\n';
  }
  const std::string text = csv.str();
  sink.write(text.data(), static_cast<std::streamsize>(text.size()));
  sink.flush();
  if (!sink) throw ScenarioError(ScenarioErrorKind::Io, 0, "stats write failed");
}

}  // namespace faultsim
