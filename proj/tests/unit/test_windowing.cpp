#include <doctest.h>

#include <random>
#include <set>

#include "brute_force.hpp"
#include "generators.hpp"
#include "tabsel/errors.hpp"
#include "tabsel/windowing.hpp"

using namespace tabsel;

namespace {

Table blank(std::size_t rows, std::size_t cols) {
  return Table::from_rows(std::vector<std::string>(cols, "h"),
                          std::vector<std::vector<std::string>>(rows, std::vector<std::string>(cols, "x")));
}

std::vector<std::pair<std::size_t, std::size_t>> origins(const std::vector<Window>& ws) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& w : ws) out.emplace_back(w.origin_row(), w.origin_col());
  return out;
}

}  // namespace

TEST_CASE("6x5 table with w=4 gives six raster-ordered windows") {
  Table t = blank(6, 5);
  auto ws = divide_table(t, WindowConfig::square(4));
  // Literal clamp-and-slice enumeration, deduplicated, gives the same origins.
  auto literal = brute::window_origins(6, 5, 4, 4);
  CHECK(origins(ws) == std::vector<std::pair<std::size_t, std::size_t>>(literal.begin(), literal.end()));
  CHECK(origins(ws) == std::vector<std::pair<std::size_t, std::size_t>>{
                           {0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 0}, {2, 1}});
  for (const auto& w : ws) {
    CHECK(w.height() == 4);
    CHECK(w.width() == 4);
  }
}

TEST_CASE("small and exact-fit tables give a single window") {
  auto small = blank(3, 3);
  auto ws = divide_table(small, WindowConfig::square(4));
  REQUIRE(ws.size() == 1);
  CHECK(ws[0].height() == 3);
  CHECK(ws[0].width() == 3);

  auto exact = blank(4, 4);
  ws = divide_table(exact, WindowConfig::square(4));
  REQUIRE(ws.size() == 1);
  CHECK(ws[0].origin_row() == 0);
  CHECK(ws[0].origin_col() == 0);
}

TEST_CASE("spanning-columns windows cover every column") {
  auto t = blank(7, 9);
  auto ws = divide_table(t, WindowConfig::spanning_columns(4));
  CHECK(ws.size() == 4);
  for (const auto& w : ws) CHECK(w.width() == 9);
}

TEST_CASE("empty tables and zero window sizes are rejected") {
  Table empty;
  CHECK_THROWS_AS(divide_table(empty), EmptyInput);
  auto header_only = Table::from_rows({"a"}, {});
  CHECK_THROWS_AS(divide_table(header_only), EmptyInput);
  auto t = blank(2, 2);
  CHECK_THROWS_AS(divide_table(t, WindowConfig{0, 3}), InvalidArgument);
}

TEST_CASE("coverage, count and determinism on random shapes") {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 200; ++iter) {
    const std::size_t R = testgen::uniform(rng, 1, 20);
    const std::size_t C = testgen::uniform(rng, 1, 20);
    const std::size_t w = testgen::uniform(rng, 1, 8);
    auto t = blank(R, C);
    auto ws = divide_table(t, WindowConfig::square(w));

    const std::size_t h = std::min(w, R), wd = std::min(w, C);
    CHECK(ws.size() == (R - h + 1) * (C - wd + 1));
    CellSet covered;
    for (const auto& win : ws) {
      auto coords = win.coordinates();
      covered.insert(coords.begin(), coords.end());
    }
    CHECK(covered == t.coordinates());
    CHECK(origins(divide_table(t, WindowConfig::square(w))) == origins(ws));
  }
}
