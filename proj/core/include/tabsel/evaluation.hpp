#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tabsel/condition.hpp"
#include "tabsel/table.hpp"

namespace tabsel {

// Rows satisfying all conditions x (condition and answer columns).
struct GoldTable {
  std::set<std::size_t> rows;
  std::set<std::size_t> columns;
  CellSet cells;
};

GoldTable gold_table(const Table& table, const Annotation& annotation);

struct SelectionScore {
  double precision = 0.0;  // tp / predicted, 0 when nothing is predicted
  double recall = 0.0;     // tp / gold, 1 when the gold table is empty
  std::size_t true_positive = 0;
  std::size_t predicted = 0;
  std::size_t gold = 0;
};

// Cell-level precision and recall of a predicted subtable. Only provenance
// coordinates matter, never cell contents.
SelectionScore score_selection(const Table& predicted, const GoldTable& gold);
SelectionScore score_cells(const CellSet& predicted, const CellSet& gold);

// Lowercase, trim, collapse internal whitespace, and print numbers in a
// canonical form ("31.0" -> "31").
std::string normalize_answer(std::string_view text);

// With one gold answer, normalized equality. With several, the prediction is
// split on "|" and ", " and compared to the golds as a multiset.
bool exact_match(std::string_view predicted, const std::vector<std::string>& gold_answers);

// Per-example outcome consumed by corpus_report.
struct ExampleResult {
  std::string table_id;
  std::string question_id;
  std::size_t original_cells = 0;
  std::size_t subtable_cells = 0;
  SelectionScore score;
  std::optional<bool> exact_match;
  std::size_t iterations = 0;
  bool converged = true;
  std::size_t relevant_columns = 0;  // condition + answer columns
  std::size_t answer_rows = 0;       // rows of the gold table

  double reduction_ratio() const {
    return original_cells == 0 ? 0.0
                               : static_cast<double>(subtable_cells) / static_cast<double>(original_cells);
  }
};

struct BucketStats {
  std::string label;
  std::size_t count = 0;
  double mean_precision = 0.0;
  double mean_recall = 0.0;
  double mean_reduction_ratio = 0.0;
  std::optional<double> exact_match;  // only when every example has an answer
};

struct Report {
  std::size_t examples = 0;
  double mean_precision = 0.0;
  double mean_recall = 0.0;
  std::optional<double> exact_match;
  double mean_reduction_ratio = 0.0;
  std::size_t non_converged = 0;
  std::map<std::size_t, std::size_t> iteration_histogram;
  std::vector<BucketStats> by_table_size;
  std::vector<BucketStats> by_relevant_columns;
  std::vector<BucketStats> by_answer_rows;
};

struct ReportOptions {
  // Lower edges of the cell-count buckets after the first; the default gives
  // [0,50) [50,100) [100,200) [200,500) [500,1000) [1000,inf).
  std::vector<std::size_t> size_edges{50, 100, 200, 500, 1000};
  std::vector<std::size_t> column_edges{2, 3, 4, 5};
  std::vector<std::size_t> answer_row_edges{1, 2, 4, 8};
};

// Throws InvalidArgument when `results` is empty.
Report corpus_report(std::span<const ExampleResult> results, const ReportOptions& opts = {});

std::string report_to_json(const Report& report);
std::string report_to_text(const Report& report);

}  // namespace tabsel
