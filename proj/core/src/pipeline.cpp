#include "tabsel/pipeline.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "tabsel/errors.hpp"

namespace tabsel {
namespace {

// Runs the selector over every window; results are indexed by window so the
// combine step does not depend on scheduling.
std::vector<SelectorOutput> conquer(const std::vector<Window>& windows, const Question& question,
                                    const Selector& selector, const Annotation* annotation,
                                    std::size_t jobs) {
  std::vector<SelectorOutput> outputs(windows.size());
  const std::size_t workers = std::min(jobs, windows.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < windows.size(); ++i) {
      outputs[i] = selector.select(windows[i], question, annotation);
    }
    return outputs;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < windows.size(); i = next++) {
          try {
            outputs[i] = selector.select(windows[i], question, annotation);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = windows.size();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return outputs;
}

}  // namespace

void PipelineConfig::validate() const {
  window.validate();
  if (max_iterations < 1) throw InvalidArgument("max_iterations must be at least 1");
  if (jobs < 1) throw InvalidArgument("jobs must be at least 1");
}

std::size_t PipelineTrace::parse_warnings() const {
  std::size_t n = 0;
  for (const auto& it : iterations) n += it.parse_warnings;
  return n;
}

PipelineResult select_subtable(const Table& table, const Question& question,
                               const Selector& selector, const Annotation* annotation,
                               const PipelineConfig& cfg) {
  cfg.validate();
  if (table.empty()) throw EmptyInput("cannot select from an empty table");
  if (selector.needs_annotation() && annotation == nullptr) {
    throw InvalidArgument("this selector needs an annotation");
  }

  PipelineResult result{table, {}};
  Table& current = result.table;
  PipelineTrace& trace = result.trace;

  for (std::size_t pass = 0; pass < cfg.max_iterations; ++pass) {
    const auto start = std::chrono::steady_clock::now();
    IterationRecord record;
    record.input_rows = current.rows();
    record.input_cols = current.cols();

    const std::vector<Window> windows = divide_table(current, cfg.window);
    record.windows = windows.size();
    std::vector<SelectorOutput> outputs = conquer(windows, question, selector, annotation, cfg.jobs);

    CellSelection combined;
    for (std::size_t i = 0; i < windows.size(); ++i) {
      record.parse_warnings += outputs[i].parse_warnings;
      combined.merge(outputs[i].selection.restricted_to(windows[i]));
    }
    record.union_cells = combined.cells().size();

    if (!combined.has_columns()) {
      Table empty;
      record.output_cells = 0;
      record.elapsed = std::chrono::steady_clock::now() - start;
      if (cfg.keep_tables) record.output = empty;
      trace.iterations.push_back(std::move(record));
      trace.empty_result = true;
      trace.converged = true;
      current = std::move(empty);
      return result;
    }

    Table next = materialize(combined, current);
    record.output_cells = next.cell_count();
    record.elapsed = std::chrono::steady_clock::now() - start;
    if (cfg.keep_tables) record.output = next;
    trace.iterations.push_back(std::move(record));

    const bool unchanged = table_equals(next, current);
    current = std::move(next);
    if (unchanged || current.rows() == 0) {
      trace.converged = true;
      return result;
    }
  }
  return result;
}

}  // namespace tabsel
