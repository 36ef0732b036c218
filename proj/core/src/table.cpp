#include "tabsel/table.hpp"

#include <algorithm>

#include "tabsel/errors.hpp"
#include "text_util.hpp"

namespace tabsel {
namespace {

bool strictly_increasing(const std::vector<std::size_t>& ids) {
  return std::adjacent_find(ids.begin(), ids.end(), std::greater_equal<>()) == ids.end();
}

std::optional<std::size_t> find_id(const std::vector<std::size_t>& ids, std::size_t id) {
  auto it = std::lower_bound(ids.begin(), ids.end(), id);
  if (it == ids.end() || *it != id) return std::nullopt;
  return static_cast<std::size_t>(it - ids.begin());
}

}  // namespace

Table::Table(std::vector<std::string> headers, std::vector<std::vector<std::string>> cells,
             std::vector<std::size_t> row_ids, std::vector<std::size_t> col_ids)
    : headers_(std::move(headers)),
      cells_(std::move(cells)),
      row_ids_(std::move(row_ids)),
      col_ids_(std::move(col_ids)) {
  if (headers_.size() != col_ids_.size()) {
    throw InvalidArgument("table has " + std::to_string(headers_.size()) + " headers but " +
                          std::to_string(col_ids_.size()) + " column ids");
  }
  if (cells_.size() != row_ids_.size()) {
    throw InvalidArgument("table has " + std::to_string(cells_.size()) + " rows but " +
                          std::to_string(row_ids_.size()) + " row ids");
  }
  for (std::size_t r = 0; r < cells_.size(); ++r) {
    if (cells_[r].size() != headers_.size()) {
      throw InvalidArgument("row " + std::to_string(r) + " has " + std::to_string(cells_[r].size()) +
                            " cells, expected " + std::to_string(headers_.size()));
    }
  }
  if (!strictly_increasing(row_ids_)) throw InvalidArgument("row ids must be strictly increasing");
  if (!strictly_increasing(col_ids_)) throw InvalidArgument("column ids must be strictly increasing");
}

Table Table::from_rows(std::vector<std::string> headers,
                       std::vector<std::vector<std::string>> cells) {
  std::vector<std::size_t> row_ids(cells.size());
  std::vector<std::size_t> col_ids(headers.size());
  for (std::size_t i = 0; i < row_ids.size(); ++i) row_ids[i] = i;
  for (std::size_t i = 0; i < col_ids.size(); ++i) col_ids[i] = i;
  return Table(std::move(headers), std::move(cells), std::move(row_ids), std::move(col_ids));
}

std::optional<std::size_t> Table::local_row(std::size_t global_row) const {
  return find_id(row_ids_, global_row);
}

std::optional<std::size_t> Table::local_col(std::size_t global_col) const {
  return find_id(col_ids_, global_col);
}

CellSet Table::coordinates() const {
  CellSet out;
  for (std::size_t r : row_ids_) {
    for (std::size_t c : col_ids_) out.insert(out.end(), CellCoord{r, c});
  }
  return out;
}

Window::Window(const Table& parent, std::size_t origin_row, std::size_t origin_col,
               std::size_t height, std::size_t width)
    : parent_(&parent),
      origin_row_(origin_row),
      origin_col_(origin_col),
      height_(height),
      width_(width) {
  if (origin_row + height > parent.rows() || origin_col + width > parent.cols()) {
    throw InvalidArgument("window exceeds parent table bounds");
  }
}

std::optional<std::size_t> Window::local_row(std::size_t global_row) const {
  auto local = parent_->local_row(global_row);
  if (!local || *local < origin_row_ || *local >= origin_row_ + height_) return std::nullopt;
  return *local - origin_row_;
}

std::optional<std::size_t> Window::local_col(std::size_t global_col) const {
  auto local = parent_->local_col(global_col);
  if (!local || *local < origin_col_ || *local >= origin_col_ + width_) return std::nullopt;
  return *local - origin_col_;
}

CellSet Window::coordinates() const {
  CellSet out;
  for (std::size_t r = 0; r < height_; ++r) {
    for (std::size_t c = 0; c < width_; ++c) out.insert(out.end(), global(r, c));
  }
  return out;
}

Table Window::to_table() const {
  std::vector<std::string> headers;
  std::vector<std::size_t> col_ids;
  for (std::size_t c = 0; c < width_; ++c) {
    headers.push_back(header(c));
    col_ids.push_back(global_col(c));
  }
  std::vector<std::vector<std::string>> cells;
  std::vector<std::size_t> row_ids;
  for (std::size_t r = 0; r < height_; ++r) {
    auto& row = cells.emplace_back();
    for (std::size_t c = 0; c < width_; ++c) row.push_back(cell(r, c));
    row_ids.push_back(global_row(r));
  }
  return Table(std::move(headers), std::move(cells), std::move(row_ids), std::move(col_ids));
}

CellSelection::CellSelection(std::set<std::size_t> columns, CellSet cells)
    : columns_(std::move(columns)), cells_(std::move(cells)) {
  for (const auto& cell : cells_) {
    if (!columns_.contains(cell.col)) {
      throw InvalidSelection("selected cell (" + std::to_string(cell.row) + "," +
                             std::to_string(cell.col) + ") lies outside the selected columns");
    }
  }
}

void CellSelection::merge(const CellSelection& other) {
  columns_.insert(other.columns_.begin(), other.columns_.end());
  cells_.insert(other.cells_.begin(), other.cells_.end());
}

CellSelection CellSelection::restricted_to(const Window& window) const {
  CellSelection out;
  for (std::size_t c : columns_) {
    if (window.local_col(c)) out.columns_.insert(c);
  }
  for (const auto& cell : cells_) {
    if (window.contains(cell)) out.cells_.insert(cell);
  }
  return out;
}

std::set<std::size_t> CellSelection::rows() const {
  std::set<std::size_t> out;
  for (const auto& cell : cells_) out.insert(cell.row);
  return out;
}

CellSelection select_all(const Table& table) {
  CellSelection out;
  for (std::size_t c : table.col_ids()) out.add_column(c);
  for (const auto& coord : table.coordinates()) out.add_cell(coord);
  return out;
}

Table materialize(const CellSelection& selection, const Table& source) {
  if (!selection.has_columns()) throw InvalidSelection("a subtable needs at least one column");

  std::vector<std::size_t> local_cols;
  for (std::size_t c : selection.columns()) {
    auto local = source.local_col(c);
    if (!local) throw InvalidSelection("column " + std::to_string(c) + " is not in the source table");
    local_cols.push_back(*local);
  }
  std::vector<std::size_t> local_rows;
  for (std::size_t r : selection.rows()) {
    auto local = source.local_row(r);
    if (!local) throw InvalidSelection("row " + std::to_string(r) + " is not in the source table");
    local_rows.push_back(*local);
  }
  // Global ids are increasing in source order, so the sets already iterate in
  // source order.
  std::vector<std::string> headers;
  std::vector<std::size_t> col_ids;
  for (std::size_t c : local_cols) {
    headers.push_back(source.header(c));
    col_ids.push_back(source.col_ids()[c]);
  }
  std::vector<std::vector<std::string>> cells;
  std::vector<std::size_t> row_ids;
  for (std::size_t r : local_rows) {
    auto& row = cells.emplace_back();
    row.reserve(local_cols.size());
    for (std::size_t c : local_cols) row.push_back(source.cell(r, c));
    row_ids.push_back(source.row_ids()[r]);
  }
  return Table(std::move(headers), std::move(cells), std::move(row_ids), std::move(col_ids));
}

Question::Question(std::string text) : text_(std::move(text)) {
  if (detail::trim(text_).empty()) throw InvalidArgument("question must not be blank");
}

}  // namespace tabsel
