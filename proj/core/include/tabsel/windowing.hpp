#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "tabsel/table.hpp"

namespace tabsel {

// Window shape. The default is the square 4x4 window; `spanning_columns`
// gives the rows x all-columns variant used for ablations.
struct WindowConfig {
  static constexpr std::size_t kAllColumns = std::numeric_limits<std::size_t>::max();

  std::size_t rows = 4;
  std::size_t cols = 4;

  static WindowConfig square(std::size_t w) { return {w, w}; }
  static WindowConfig spanning_columns(std::size_t rows) { return {rows, kAllColumns}; }

  // Throws InvalidArgument when either extent is zero.
  void validate() const;
};

// Stride-1 sliding windows over `table`, clamped at the bottom and right
// edges so every window is full size (or spans the whole dimension when the
// table is smaller than the window). Origins are unique and emitted in raster
// order. Every cell of the table lies in at least one window.
//
// Throws EmptyInput when the table has no rows or no columns.
std::vector<Window> divide_table(const Table& table, const WindowConfig& cfg = {});

}  // namespace tabsel
