#include "tabsel/windowing.hpp"

#include <algorithm>

#include "tabsel/errors.hpp"

namespace tabsel {

void WindowConfig::validate() const {
  if (rows == 0 || cols == 0) throw InvalidArgument("window size must be at least 1");
}

std::vector<Window> divide_table(const Table& table, const WindowConfig& cfg) {
  cfg.validate();
  if (table.empty()) throw EmptyInput("cannot divide an empty table");

  const std::size_t height = std::min(cfg.rows, table.rows());
  const std::size_t width = std::min(cfg.cols, table.cols());
  const std::size_t last_row = table.rows() - height;
  const std::size_t last_col = table.cols() - width;

  std::vector<Window> windows;
  windows.reserve((last_row + 1) * (last_col + 1));
  for (std::size_t i = 0; i <= last_row; ++i) {
    for (std::size_t j = 0; j <= last_col; ++j) windows.emplace_back(table, i, j, height, width);
  }
  return windows;
}

}  // namespace tabsel
