#include <doctest.h>

#include <random>

#include "generators.hpp"
#include "tabsel/errors.hpp"
#include "tabsel/table.hpp"

using namespace tabsel;

namespace {

Table grid(std::size_t rows, std::size_t cols) {
  std::vector<std::string> headers;
  for (std::size_t c = 0; c < cols; ++c) headers.push_back("c" + std::to_string(c));
  std::vector<std::vector<std::string>> cells(rows, std::vector<std::string>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) cells[r][c] = std::to_string(r) + ":" + std::to_string(c);
  }
  return Table::from_rows(headers, cells);
}

}  // namespace

TEST_CASE("table construction validates shape and provenance") {
  CHECK_THROWS_AS(Table({"a", "b"}, {{"1"}}, {0}, {0, 1}), InvalidArgument);
  CHECK_THROWS_AS(Table({"a"}, {{"1"}, {"2"}}, {1, 0}, {0}), InvalidArgument);
  CHECK_THROWS_AS(Table({"a"}, {{"1"}, {"2"}}, {1, 1}, {0}), InvalidArgument);
  CHECK_THROWS_AS(Table({"a"}, {{"1"}}, {0}, {0, 1}), InvalidArgument);

  Table t = grid(3, 2);
  CHECK(t.rows() == 3);
  CHECK(t.cols() == 2);
  CHECK(t.row_ids() == std::vector<std::size_t>{0, 1, 2});
  CHECK(t.local_row(2) == 2u);
  CHECK_FALSE(t.local_col(5).has_value());
}

TEST_CASE("materialize: full selection is the identity") {
  Table t = grid(4, 3);
  CHECK(table_equals(materialize(select_all(t), t), t));
}

TEST_CASE("materialize fills the bounding rectangle") {
  // 5x4 table; columns {0,2}; cells (1,0) and (3,2). Rows owning a selected
  // cell are {1,3}; the rectangle is {1,3} x {0,2} and the two unselected
  // intersections (1,2) and (3,0) are copied too.
  Table t = grid(5, 4);
  CellSelection sel({0, 2}, {{1, 0}, {3, 2}});
  Table out = materialize(sel, t);
  CHECK(out.row_ids() == std::vector<std::size_t>{1, 3});
  CHECK(out.col_ids() == std::vector<std::size_t>{0, 2});
  CHECK(out.headers() == std::vector<std::string>{"c0", "c2"});
  CHECK(out.cells() == std::vector<std::vector<std::string>>{{"1:0", "1:2"}, {"3:0", "3:2"}});
}

TEST_CASE("materialize: headers-only and invalid selections") {
  Table t = grid(3, 3);
  Table headers_only = materialize(CellSelection({1, 2}, {}), t);
  CHECK(headers_only.rows() == 0);
  CHECK(headers_only.headers() == std::vector<std::string>{"c1", "c2"});

  CHECK_THROWS_AS(materialize(CellSelection{}, t), InvalidSelection);
  CHECK_THROWS_AS(materialize(CellSelection({7}, {}), t), InvalidSelection);
  CHECK_THROWS_AS(materialize(CellSelection({0}, {{9, 0}}), t), InvalidSelection);
  CHECK_THROWS_AS(CellSelection({0}, {{0, 1}}), InvalidSelection);
}

TEST_CASE("table_equals compares provenance, not just content") {
  Table t = Table::from_rows({"a"}, {{"x"}, {"x"}, {"y"}});
  Table first = materialize(CellSelection({0}, {{0, 0}}), t);
  Table second = materialize(CellSelection({0}, {{1, 0}}), t);
  CHECK(first.cells() == second.cells());
  CHECK_FALSE(table_equals(first, second));
  CHECK(table_equals(t, t));

  Table changed = Table::from_rows({"a"}, {{"x"}, {"z"}, {"y"}});
  CHECK_FALSE(table_equals(t, changed));
}

TEST_CASE("materialize properties on random selections") {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 300; ++iter) {
    Table t = grid(testgen::uniform(rng, 1, 9), testgen::uniform(rng, 1, 9));
    Window whole = Window::whole(t);
    CellSelection sel = testgen::random_selection(rng, whole);
    if (!sel.has_columns()) continue;
    Table out = materialize(sel, t);

    CHECK(out.rows() == sel.rows().size());
    CHECK(out.cols() == sel.columns().size());
    CHECK(std::includes(t.row_ids().begin(), t.row_ids().end(), out.row_ids().begin(), out.row_ids().end()));
    CHECK(std::includes(t.col_ids().begin(), t.col_ids().end(), out.col_ids().begin(), out.col_ids().end()));
    // Idempotent on its own full selection.
    if (out.rows() > 0) CHECK(table_equals(materialize(select_all(out), out), out));
  }
}

TEST_CASE("window maps local and global coordinates") {
  Table t = grid(6, 5);
  Table sub = materialize(CellSelection({1, 3, 4}, {{2, 1}, {4, 3}, {5, 4}}), t);
  Window w(sub, 1, 1, 2, 2);
  CHECK(w.global(0, 0) == CellCoord{4, 3});
  CHECK(w.cell(1, 1) == "5:4");
  CHECK(w.header(0) == "c3");
  CHECK(w.local_row(5) == 1u);
  CHECK_FALSE(w.local_row(2).has_value());
  CHECK(w.contains({5, 4}));
  CHECK_FALSE(w.contains({2, 1}));
  CHECK_THROWS_AS(Window(sub, 2, 0, 2, 1), InvalidArgument);
}

TEST_CASE("question must not be blank") {
  CHECK_THROWS_AS(Question("   \t"), InvalidArgument);
  CHECK(Question(" what? ").text() == " what? ");
}
