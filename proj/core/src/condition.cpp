#include "tabsel/condition.hpp"

#include <charconv>
#include <cmath>

#include "tabsel/errors.hpp"
#include "text_util.hpp"

namespace tabsel {

Op parse_op(std::string_view text) {
  const std::string op = detail::lower(detail::trim(text));
  if (op == "=" || op == "==" || op == "equals" || op == "eq") return Op::kEquals;
  if (op == ">" || op == "greater_than" || op == "gt") return Op::kGreaterThan;
  if (op == "<" || op == "less_than" || op == "lt") return Op::kLessThan;
  throw InvalidArgument("unknown condition operator '" + std::string(text) + "'");
}

std::string_view op_name(Op op) {
  switch (op) {
    case Op::kEquals:
      return "=";
    case Op::kGreaterThan:
      return ">";
    case Op::kLessThan:
      return "<";
  }
  return "?";
}

std::set<std::size_t> Annotation::condition_columns() const {
  std::set<std::size_t> out;
  for (const auto& cond : conditions) out.insert(cond.column);
  return out;
}

std::set<std::size_t> Annotation::relevant_columns() const {
  auto out = condition_columns();
  out.insert(answer_columns.begin(), answer_columns.end());
  return out;
}

void Annotation::validate(std::optional<std::size_t> num_cols) const {
  if (answer_columns.empty()) throw InvalidArgument("annotation needs at least one answer column");
  for (const auto& cond : conditions) {
    if (detail::trim(cond.value).empty()) throw InvalidArgument("condition value must not be blank");
  }
  if (!num_cols) return;
  for (std::size_t c : relevant_columns()) {
    if (c >= *num_cols) {
      throw InvalidArgument("column " + std::to_string(c) + " out of range for a table with " +
                            std::to_string(*num_cols) + " columns");
    }
  }
}

std::string normalize_cell(std::string_view text) { return detail::lower(detail::trim(text)); }

std::optional<double> parse_number(std::string_view text) {
  text = detail::trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

bool values_equal(std::string_view a, std::string_view b) {
  auto na = parse_number(a);
  auto nb = parse_number(b);
  if (na && nb) return *na == *nb;
  return normalize_cell(a) == normalize_cell(b);
}

bool condition_satisfied(std::string_view cell, const Condition& cond) {
  if (cond.op == Op::kEquals) return values_equal(cell, cond.value);

  auto lhs = parse_number(cell);
  auto rhs = parse_number(cond.value);
  if (lhs && rhs) return cond.op == Op::kGreaterThan ? *lhs > *rhs : *lhs < *rhs;

  const std::string a = normalize_cell(cell);
  const std::string b = normalize_cell(cond.value);
  return cond.op == Op::kGreaterThan ? a > b : a < b;
}

}  // namespace tabsel
