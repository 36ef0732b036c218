#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tabsel {

// Global (provenance) coordinate of a cell in the original input table.
struct CellCoord {
  std::size_t row = 0;
  std::size_t col = 0;

  auto operator<=>(const CellCoord&) const = default;
};

using CellSet = std::set<CellCoord>;

// Header row plus a rectangular grid of string cells. Every row and column
// remembers the index it had in the original table, so subtables produced by
// the pipeline can always be traced back to their source.
//
// Tables are immutable once built.
class Table {
 public:
  Table() = default;

  // Throws InvalidArgument on ragged rows, mismatched id vectors or ids that
  // are not strictly increasing.
  Table(std::vector<std::string> headers, std::vector<std::vector<std::string>> cells,
        std::vector<std::size_t> row_ids, std::vector<std::size_t> col_ids);

  // An original input table: row ids 0..R-1, column ids 0..C-1.
  static Table from_rows(std::vector<std::string> headers,
                         std::vector<std::vector<std::string>> cells);

  std::size_t rows() const noexcept { return row_ids_.size(); }
  std::size_t cols() const noexcept { return col_ids_.size(); }
  std::size_t cell_count() const noexcept { return rows() * cols(); }
  bool empty() const noexcept { return rows() == 0 || cols() == 0; }

  const std::vector<std::string>& headers() const noexcept { return headers_; }
  const std::vector<std::vector<std::string>>& cells() const noexcept { return cells_; }
  const std::vector<std::size_t>& row_ids() const noexcept { return row_ids_; }
  const std::vector<std::size_t>& col_ids() const noexcept { return col_ids_; }

  const std::string& header(std::size_t local_col) const { return headers_.at(local_col); }
  const std::string& cell(std::size_t local_row, std::size_t local_col) const {
    return cells_.at(local_row).at(local_col);
  }

  // Local position of a global row / column id, if this table contains it.
  std::optional<std::size_t> local_row(std::size_t global_row) const;
  std::optional<std::size_t> local_col(std::size_t global_col) const;

  bool contains(CellCoord global) const {
    return local_row(global.row).has_value() && local_col(global.col).has_value();
  }

  // Every global coordinate in the table.
  CellSet coordinates() const;

  friend bool operator==(const Table&, const Table&) = default;

 private:
  std::vector<std::string> headers_;
  std::vector<std::vector<std::string>> cells_;
  std::vector<std::size_t> row_ids_;
  std::vector<std::size_t> col_ids_;
};

// Structural equality including provenance; this is the fixed-point test of
// the selection loop.
inline bool table_equals(const Table& a, const Table& b) { return a == b; }

// A height x width view into a parent table, anchored at a local origin of
// the parent. The header slice is always part of the window and is not
// counted in its height. The parent must outlive the window.
class Window {
 public:
  Window(const Table& parent, std::size_t origin_row, std::size_t origin_col, std::size_t height,
         std::size_t width);

  // A window spanning the whole table.
  static Window whole(const Table& table) { return Window(table, 0, 0, table.rows(), table.cols()); }

  const Table& parent() const noexcept { return *parent_; }
  std::size_t origin_row() const noexcept { return origin_row_; }
  std::size_t origin_col() const noexcept { return origin_col_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }

  const std::string& header(std::size_t c) const { return parent_->header(origin_col_ + c); }
  const std::string& cell(std::size_t r, std::size_t c) const {
    return parent_->cell(origin_row_ + r, origin_col_ + c);
  }

  std::size_t global_row(std::size_t r) const { return parent_->row_ids().at(origin_row_ + r); }
  std::size_t global_col(std::size_t c) const { return parent_->col_ids().at(origin_col_ + c); }
  CellCoord global(std::size_t r, std::size_t c) const { return {global_row(r), global_col(c)}; }

  // Window-local position of a global row / column id.
  std::optional<std::size_t> local_row(std::size_t global_row) const;
  std::optional<std::size_t> local_col(std::size_t global_col) const;

  bool contains(CellCoord global) const {
    return local_row(global.row).has_value() && local_col(global.col).has_value();
  }

  CellSet coordinates() const;

  // Copies the window out into a standalone table that keeps global ids.
  Table to_table() const;

 private:
  const Table* parent_;
  std::size_t origin_row_;
  std::size_t origin_col_;
  std::size_t height_;
  std::size_t width_;
};

// A set of selected cells (global coordinates) plus the set of columns the
// selection spans. Columns may be present with no cells, which denotes a
// headers-only selection.
class CellSelection {
 public:
  CellSelection() = default;
  CellSelection(std::set<std::size_t> columns, CellSet cells);

  const std::set<std::size_t>& columns() const noexcept { return columns_; }
  const CellSet& cells() const noexcept { return cells_; }

  void add_column(std::size_t global_col) { columns_.insert(global_col); }
  // Adds the cell and its column.
  void add_cell(CellCoord cell) {
    columns_.insert(cell.col);
    cells_.insert(cell);
  }

  // Set union of columns and cells.
  void merge(const CellSelection& other);

  // Drops every cell and column that the window does not contain.
  CellSelection restricted_to(const Window& window) const;

  // Distinct global rows owning at least one selected cell.
  std::set<std::size_t> rows() const;

  bool has_columns() const noexcept { return !columns_.empty(); }

  friend bool operator==(const CellSelection&, const CellSelection&) = default;

 private:
  std::set<std::size_t> columns_;
  CellSet cells_;
};

// Every cell of the table as a selection.
CellSelection select_all(const Table& table);

// Builds the bounding rectangle of the selection: the selected columns times
// the rows owning at least one selected cell, copied from `source` in source
// order. Cells inside the rectangle that were not selected are filled in too.
// A selection with columns but no cells yields a header-only table.
//
// Throws InvalidSelection when the selection has no columns or references a
// coordinate missing from `source`.
Table materialize(const CellSelection& selection, const Table& source);

// User question; text must be non-empty after trimming.
class Question {
 public:
  explicit Question(std::string text);

  const std::string& text() const noexcept { return text_; }

 private:
  std::string text_;
};

}  // namespace tabsel
