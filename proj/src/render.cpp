#include "faultsim/render.hpp"

#include <algorithm>
#include <charconv>

namespace faultsim {

std::string ansi::strip(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\x1b' && i + 1 < text.size() && text[i + 1] == '[') {
      std::size_t j = i + 2;
      while (j < text.size() && !(text[j] >= 0x40 && text[j] <= 0x7e)) ++j;
      i = j;
      continue;
    }
    out.push_back(text[i]);
  }
  return out;
}

StressBand classify_stress(Stress value, const StressBands& bands, Stress threshold) {
  if (value >= threshold) return StressBand::Quake;
  if (value <= bands.low_max) return StressBand::Low;
  if (value <= bands.med_max) return StressBand::Medium;
  return StressBand::High;
}

std::string render_fault_map(const FaultMap& map, const RenderStyle& style) {
  std::string out;
  out.reserve(map.dims().area() * (style.color_enabled ? 11 : 2));
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x) {
      if (x > 0) out.push_back(' ');
      if (!is_fault(map, x, y)) {
        out.push_back('0');
      } else if (style.color_enabled) {
        out.append(ansi::kRed).append("1").append(ansi::kReset);
      } else {
        out.push_back('1');
      }
    }
    out.push_back('\n');
  }
  return out;
}

namespace {

std::string_view band_color(StressBand band) {
  switch (band) {
    case StressBand::Low:
      return ansi::kGreen;
    case StressBand::Medium:
      return ansi::kYellow;
    case StressBand::High:
      return ansi::kRed;
    case StressBand::Quake:
      return ansi::kBlue;
  }
  return ansi::kReset;
}

void append_cell(std::string& out, Stress value) {
  char digits[4];
  const Stress shown = std::min<Stress>(value, 999);
  const char* end = std::to_chars(digits, digits + sizeof digits, shown).ptr;
  const auto len = static_cast<std::size_t>(end - digits);
  out.append(3 - len, ' ');
  out.append(digits, len);
}

}  // namespace

std::string render_stress_map(const StressMap& stress, const StressBands& bands,
                              Stress threshold, const RenderStyle& style) {
  std::string out;
  out.reserve(stress.dims().area() * (style.color_enabled ? 13 : 4));
  for (int y = 0; y < stress.height(); ++y) {
    for (int x = 0; x < stress.width(); ++x) {
      if (x > 0) out.push_back(' ');
      const Stress value = stress.get(x, y);
      if (style.color_enabled) {
        out.append(band_color(classify_stress(value, bands, threshold)));
        append_cell(out, value);
        out.append(ansi::kReset);
      } else {
        append_cell(out, value);
      }
    }
    out.push_back('\n');
  }
  return out;
}

StressMap quake_frame(const StressMap& stress, const StepReport& report, Stress threshold) {
  StressMap frame = stress;
  for (const Cell& c : report.quaked_cells) frame.set(c.x, c.y, threshold);
  return frame;
}

}  // namespace faultsim
