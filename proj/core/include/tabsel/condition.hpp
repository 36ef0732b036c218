#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace tabsel {

// WikiSQL-style comparison operators.
enum class Op { kEquals, kGreaterThan, kLessThan };

// Accepts "=", "==", "equals", ">", "greater_than", "<", "less_than"
// (case-insensitive). Throws InvalidArgument otherwise.
Op parse_op(std::string_view text);
std::string_view op_name(Op op);

// A predicate on one column of the original table.
struct Condition {
  std::size_t column = 0;  // global column index
  Op op = Op::kEquals;
  std::string value;

  friend bool operator==(const Condition&, const Condition&) = default;
};

// Ground-truth annotation of one question: its conditions, the columns that
// hold the answer and the gold answer strings.
struct Annotation {
  std::vector<Condition> conditions;
  std::set<std::size_t> answer_columns;
  std::vector<std::string> gold_answers;

  // Condition columns plus answer columns.
  std::set<std::size_t> relevant_columns() const;
  std::set<std::size_t> condition_columns() const;

  // Throws InvalidArgument if answer_columns is empty, a condition value is
  // blank, or (when `num_cols` is given) a column index is out of range.
  void validate(std::optional<std::size_t> num_cols = std::nullopt) const;

  friend bool operator==(const Annotation&, const Annotation&) = default;
};

// Cell normalization shared by condition equality, same-value augmentation
// and answer matching: trimmed, ASCII-lowercased.
std::string normalize_cell(std::string_view text);

// Parses a trimmed decimal number (the whole string must be consumed).
std::optional<double> parse_number(std::string_view text);

// Equality under the engine-wide rule: numeric when both sides parse as
// numbers, otherwise normalized string equality.
bool values_equal(std::string_view a, std::string_view b);

// equals: values_equal. greater/less: numeric comparison when both sides
// parse, otherwise lexicographic on the normalized strings.
bool condition_satisfied(std::string_view cell, const Condition& cond);

}  // namespace tabsel
