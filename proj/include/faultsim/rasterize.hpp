#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "faultsim/grid.hpp"

namespace faultsim {

enum class DrawStatus { Ok, OutOfRange };

struct DrawResult {
  DrawStatus status = DrawStatus::Ok;
  std::size_t cells_set = 0;  // cells that flipped from 0 to 1

  explicit operator bool() const { return status == DrawStatus::Ok; }
};

struct Vertical {
  int x;
};
struct Horizontal {
  int y;
};
struct Circle {
  int cx;
  int cy;
  int r;
};
struct Segment {
  int x0;
  int y0;
  int x1;
  int y1;
};

using ShapeSpec = std::variant<Vertical, Horizontal, Circle, Segment>;

DrawResult draw_vertical(FaultMap& map, int x);
DrawResult draw_horizontal(FaultMap& map, int y);

// Both endpoints must be in bounds. Endpoints are put in (x, y) lexicographic
// order first, so the cell set depends only on the unordered pair. On an exact
// half-cell tie the minor coordinate takes the lower value.
DrawResult draw_segment(FaultMap& map, int x0, int y0, int x1, int y1);

// Center must be in bounds; cells of the ring that fall outside are dropped.
// A negative radius is rejected as OutOfRange.
DrawResult draw_circle(FaultMap& map, int cx, int cy, int r);

DrawResult draw_shape(FaultMap& map, const ShapeSpec& shape);

/// Unclipped cell sequences, in traversal order. These may contain
/// coordinates outside any grid and, for circles, repeated cells.
std::vector<Cell> segment_cells(int x0, int y0, int x1, int y1);
std::vector<Cell> circle_cells(int cx, int cy, int r);

}  // namespace faultsim
