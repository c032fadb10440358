#include "faultsim/rasterize.hpp"

#include <algorithm>
#include <cstdlib>
#include <utility>

namespace faultsim {
namespace {

// Sets every in-bounds cell of `cells` and counts the ones that were clear.
std::size_t plot(FaultMap& map, const std::vector<Cell>& cells) {
  std::size_t fresh = 0;
  for (const Cell& c : cells) {
    if (!in_bounds(map.dims(), c.x, c.y)) continue;
    if (!is_fault(map, c.x, c.y)) {
      map.set(c.x, c.y, 1);
      ++fresh;
    }
  }
  return fresh;
}

DrawResult out_of_range() { return {DrawStatus::OutOfRange, 0}; }

// Every midpoint-circle cell lies at least r/sqrt(2) - 1 from the center
// along one axis, so beyond this radius nothing can land on any legal grid.
constexpr int kNoVisibleCellRadius = 4 * GridDims::kMaxSide;

}  // namespace

DrawResult draw_vertical(FaultMap& map, int x) {
  if (x < 0 || x >= map.width()) return out_of_range();
  std::size_t fresh = 0;
  for (int y = 0; y < map.height(); ++y) {
    if (!is_fault(map, x, y)) {
      map.set(x, y, 1);
      ++fresh;
    }
  }
  return {DrawStatus::Ok, fresh};
}

DrawResult draw_horizontal(FaultMap& map, int y) {
  if (y < 0 || y >= map.height()) return out_of_range();
  std::size_t fresh = 0;
  for (int x = 0; x < map.width(); ++x) {
    if (!is_fault(map, x, y)) {
      map.set(x, y, 1);
      ++fresh;
    }
  }
  return {DrawStatus::Ok, fresh};
}

std::vector<Cell> segment_cells(int x0, int y0, int x1, int y1) {
  if (std::pair{x1, y1} < std::pair{x0, y0}) {
    std::swap(x0, x1);
    std::swap(y0, y1);
  }
  const long long dx = static_cast<long long>(x1) - x0;
  const long long dy = static_cast<long long>(y1) - y0;
  const long long adx = std::llabs(dx);
  const long long ady = std::llabs(dy);
  const int sx = dx > 0 ? 1 : (dx < 0 ? -1 : 0);
  const int sy = dy > 0 ? 1 : (dy < 0 ? -1 : 0);

  std::vector<Cell> out;
  out.reserve(static_cast<std::size_t>(std::max(adx, ady)) + 1);

  int x = x0;
  int y = y0;
  if (adx >= ady) {
    // err = 2*ady*k - adx*(2m+1); zero means the line passes exactly halfway
    // between two rows, and the lower row wins.
    long long err = -adx;
    const bool step_on_tie = sy < 0;
    for (long long k = 0; k <= adx; ++k) {
      out.push_back({x, y});
      if (k == adx) break;
      x += sx;
      err += 2 * ady;
      if (err > 0 || (step_on_tie && err == 0)) {
        y += sy;
        err -= 2 * adx;
      }
    }
  } else {
    long long err = -ady;
    const bool step_on_tie = sx < 0;
    for (long long k = 0; k <= ady; ++k) {
      out.push_back({x, y});
      if (k == ady) break;
      y += sy;
      err += 2 * adx;
      if (err > 0 || (step_on_tie && err == 0)) {
        x += sx;
        err -= 2 * ady;
      }
    }
  }
  return out;
}

DrawResult draw_segment(FaultMap& map, int x0, int y0, int x1, int y1) {
  if (!in_bounds(map.dims(), x0, y0) || !in_bounds(map.dims(), x1, y1)) {
    return out_of_range();
  }
  return {DrawStatus::Ok, plot(map, segment_cells(x0, y0, x1, y1))};
}

std::vector<Cell> circle_cells(int cx, int cy, int r) {
  std::vector<Cell> out;
  if (r < 0) return out;

  // Walk the octant from (0, r) toward the diagonal. The decision variable is
  // x^2 + (y - 1/2)^2 - r^2 scaled to integers; step down a row once the
  // midpoint between the two candidate rows falls outside the circle.
  long long x = 0;
  long long y = r;
  long long decision = 1 - static_cast<long long>(r);
  auto mirror = [&](long long a, long long b) {
    const long long pts[8][2] = {{a, b}, {-a, b}, {a, -b}, {-a, -b},
                                 {b, a}, {-b, a}, {b, -a}, {-b, -a}};
    for (const auto& p : pts) {
      out.push_back({static_cast<int>(cx + p[0]), static_cast<int>(cy + p[1])});
    }
  };
  while (x <= y) {
    mirror(x, y);
    ++x;
    if (decision < 0) {
      decision += 2 * x + 1;
    } else {
      --y;
      decision += 2 * (x - y) + 1;
    }
  }
  return out;
}

DrawResult draw_circle(FaultMap& map, int cx, int cy, int r) {
  if (r < 0 || !in_bounds(map.dims(), cx, cy)) return out_of_range();
  if (r > kNoVisibleCellRadius) return {DrawStatus::Ok, 0};
  return {DrawStatus::Ok, plot(map, circle_cells(cx, cy, r))};
}

DrawResult draw_shape(FaultMap& map, const ShapeSpec& shape) {
  struct Visitor {
    FaultMap& map;
    DrawResult operator()(const Vertical& s) const { return draw_vertical(map, s.x); }
    DrawResult operator()(const Horizontal& s) const { return draw_horizontal(map, s.y); }
    DrawResult operator()(const Circle& s) const { return draw_circle(map, s.cx, s.cy, s.r); }
    DrawResult operator()(const Segment& s) const {
      return draw_segment(map, s.x0, s.y0, s.x1, s.y1);
    }
  };
  return std::visit(Visitor{map}, shape);
}

}  // namespace faultsim
