#include <doctest.h>

#include "tabsel/condition.hpp"
#include "tabsel/errors.hpp"

using namespace tabsel;

TEST_CASE("equality folds case and whitespace") {
  CHECK(condition_satisfied("Diesel", {0, Op::kEquals, "diesel"}));
  CHECK(condition_satisfied("  Safe ", {0, Op::kEquals, "SAFE"}));
  CHECK_FALSE(condition_satisfied("1995-1997", {0, Op::kEquals, "1998-2001"}));
}

TEST_CASE("equality is numeric when both sides parse") {
  CHECK(condition_satisfied("31", {0, Op::kEquals, "31.0"}));
  CHECK(condition_satisfied("+7", {0, Op::kEquals, "7"}));
  CHECK_FALSE(condition_satisfied("31", {0, Op::kEquals, "31.5"}));
  // "1,000" does not parse as a number, so it is compared as text.
  CHECK_FALSE(condition_satisfied("1,000", {0, Op::kEquals, "1000"}));
}

TEST_CASE("ordering is numeric first, then lexicographic") {
  CHECK(condition_satisfied("10", {0, Op::kGreaterThan, "9"}));
  CHECK_FALSE(condition_satisfied("10", {0, Op::kLessThan, "9"}));
  CHECK(condition_satisfied("-3", {0, Op::kLessThan, "0"}));
  CHECK(condition_satisfied("banana", {0, Op::kGreaterThan, "Apple"}));
  CHECK(condition_satisfied("10 kg", {0, Op::kLessThan, "9 kg"}));
  CHECK_FALSE(condition_satisfied("5", {0, Op::kGreaterThan, "5"}));
}

TEST_CASE("operator parsing") {
  CHECK(parse_op("=") == Op::kEquals);
  CHECK(parse_op("EQUALS") == Op::kEquals);
  CHECK(parse_op(">") == Op::kGreaterThan);
  CHECK(parse_op("less_than") == Op::kLessThan);
  CHECK_THROWS_AS(parse_op("LIKE"), InvalidArgument);
  for (Op op : {Op::kEquals, Op::kGreaterThan, Op::kLessThan}) CHECK(parse_op(op_name(op)) == op);
}

TEST_CASE("annotation validation") {
  Annotation ann;
  CHECK_THROWS_AS(ann.validate(), InvalidArgument);
  ann.answer_columns = {1};
  CHECK_NOTHROW(ann.validate(3));
  CHECK_THROWS_AS(ann.validate(1), InvalidArgument);
  ann.conditions.push_back({2, Op::kEquals, "  "});
  CHECK_THROWS_AS(ann.validate(3), InvalidArgument);
  ann.conditions.back().value = "x";
  CHECK(ann.relevant_columns() == std::set<std::size_t>{1, 2});
}
