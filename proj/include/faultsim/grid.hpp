#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace faultsim {

using Stress = std::int64_t;

/// Grid size in cells. Both sides are limited to [1, kMaxSide].
class GridDims {
 public:
  static constexpr int kMaxSide = 1024;
  static constexpr int kDefaultSide = 20;

  GridDims() : GridDims(kDefaultSide, kDefaultSide) {}

  GridDims(int width, int height) : width_(width), height_(height) {
    if (!valid(width, height)) {
      throw std::invalid_argument("grid dimensions must be in [1, 1024]");
    }
  }

  static constexpr bool valid(long long width, long long height) {
    return width >= 1 && width <= kMaxSide && height >= 1 && height <= kMaxSide;
  }

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t area() const { return static_cast<std::size_t>(width_) * height_; }

  friend bool operator==(const GridDims&, const GridDims&) = default;

 private:
  int width_;
  int height_;
};

/// Column x (left to right), row y (top to bottom).
struct Cell {
  int x = 0;
  int y = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

inline bool in_bounds(const GridDims& dims, long long x, long long y) {
  return x >= 0 && x < dims.width() && y >= 0 && y < dims.height();
}

/// Dense row-major grid. Every accessor is bounds checked; an out-of-range
/// cell throws std::out_of_range rather than touching memory.
template <typename T>
class Grid {
 public:
  explicit Grid(GridDims dims, T fill = T{}) : dims_(dims), cells_(dims.area(), fill) {}

  const GridDims& dims() const { return dims_; }
  int width() const { return dims_.width(); }
  int height() const { return dims_.height(); }

  T get(int x, int y) const { return cells_[index(x, y)]; }
  void set(int x, int y, T value) { cells_[index(x, y)] = value; }

  std::size_t index(int x, int y) const {
    if (!in_bounds(dims_, x, y)) {
      throw std::out_of_range("grid access outside bounds");
    }
    return static_cast<std::size_t>(y) * dims_.width() + x;
  }

  // Row-major flat view, for kernels that walk the whole grid.
  std::span<const T> data() const { return cells_; }
  std::span<T> data() { return cells_; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  GridDims dims_;
  std::vector<T> cells_;
};

// std::vector<bool> is bit-packed and not addressable through a span.
using FaultMap = Grid<std::uint8_t>;
using StressMap = Grid<Stress>;

inline FaultMap new_fault_map(GridDims dims) { return FaultMap(dims, 0); }
inline StressMap new_stress_map(GridDims dims) { return StressMap(dims, 0); }

inline bool is_fault(const FaultMap& map, int x, int y) { return map.get(x, y) != 0; }

inline std::size_t count_faults(const FaultMap& map) {
  std::size_t n = 0;
  for (auto c : map.data()) n += c != 0;
  return n;
}

}  // namespace faultsim
