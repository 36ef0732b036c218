#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <vector>

#include "tabsel/selector.hpp"
#include "tabsel/table.hpp"
#include "tabsel/windowing.hpp"

namespace tabsel {

struct PipelineConfig {
  WindowConfig window;
  // Upper bound on divide/select/combine passes. A deterministic selector
  // always converges before R*C passes; the cap only guards remote models.
  std::size_t max_iterations = 16;
  // Worker threads used for selector calls within one pass.
  std::size_t jobs = 1;
  // Keep a copy of the table produced by every pass.
  bool keep_tables = false;

  void validate() const;
};

struct IterationRecord {
  std::size_t input_rows = 0;
  std::size_t input_cols = 0;
  std::size_t windows = 0;
  std::size_t union_cells = 0;   // distinct selected cells before rectangularization
  std::size_t output_cells = 0;  // cells of the materialized table
  std::size_t parse_warnings = 0;
  std::chrono::nanoseconds elapsed{0};
  std::optional<Table> output;  // set when PipelineConfig::keep_tables
};

struct PipelineTrace {
  std::vector<IterationRecord> iterations;  // one per executed pass
  bool converged = false;
  // The union of some pass had no columns; the result is a zero-column table.
  bool empty_result = false;

  std::size_t parse_warnings() const;
};

struct PipelineResult {
  Table table;
  PipelineTrace trace;
};

// Repeatedly divides the current table into windows, runs the selector on
// each, unions the selected cells and materializes them, until a pass leaves
// the table unchanged or the iteration cap is hit. Each selection is clipped
// to its window, so the cell set never grows between passes. A pass that
// yields a header-only table ends the loop, since there is nothing left to
// divide.
//
// Throws EmptyInput for an empty table, InvalidArgument when the selector
// needs an annotation and none is given, and lets SelectorUnavailable
// propagate.
PipelineResult select_subtable(const Table& table, const Question& question,
                               const Selector& selector, const Annotation* annotation,
                               const PipelineConfig& cfg = {});

}  // namespace tabsel
