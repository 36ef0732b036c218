#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tabsel/condition.hpp"
#include "tabsel/datagen.hpp"
#include "tabsel/errors.hpp"
#include "tabsel/pipeline.hpp"
#include "tabsel/table.hpp"

namespace tabsel {

// A column named either by index or by exact header text.
using ColumnRef = std::variant<std::size_t, std::string>;

struct RawCondition {
  ColumnRef column;
  std::string op;
  std::string value;
};

// One JSON-lines record as written on disk:
//   {"table_id", "question_id", "headers", "rows", "question",
//    "conditions": [{"column", "op", "value"}], "answer_columns", "answers"}
// Instead of "headers"/"rows" a record may name a CSV file with "table_file"
// (resolved relative to the corpus file; its first row is the header).
struct CorpusRecord {
  std::string table_id;
  std::string question_id;
  std::vector<std::string> headers;
  std::vector<std::vector<std::string>> rows;
  std::optional<std::string> table_file;
  std::string question;
  std::vector<RawCondition> conditions;
  std::vector<ColumnRef> answer_columns;
  std::vector<std::string> answers;
};

// A validated corpus entry.
struct Example {
  std::string table_id;
  std::string question_id;
  Table table;
  Question question{"?"};
  Annotation annotation;

  friend bool operator==(const Example& a, const Example& b) {
    return a.table_id == b.table_id && a.question_id == b.question_id && a.table == b.table &&
           a.question.text() == b.question.text() && a.annotation == b.annotation;
  }
};

// Parses one JSON line. `line_no` is used for ids that are missing and in
// error messages. Throws CorpusError.
CorpusRecord parse_record(std::string_view json_line, std::size_t line_no);

// Resolves column references, operators and the table. Throws CorpusError.
Example resolve_record(const CorpusRecord& record, const std::filesystem::path& base_dir = {},
                       std::size_t line_no = 0);

// Canonical record for an example: inline table, integer column references.
CorpusRecord to_record(const Example& example);
std::string serialize_record(const CorpusRecord& record);

struct CorpusLoadResult {
  std::vector<Example> examples;
  std::vector<CorpusError> skipped;  // only populated when lenient
};

// Reads a JSON-lines corpus. Blank lines are ignored. Without `lenient` the
// first bad line throws CorpusError; with it, bad lines are collected and
// skipped.
CorpusLoadResult load_corpus(const std::filesystem::path& path, bool lenient = false);
void write_corpus(const std::filesystem::path& path, const std::vector<Example>& examples);

// Pipeline output for one example.
struct SubtableRecord {
  std::string table_id;
  std::string question_id;
  Table table;
  bool converged = true;
  std::size_t iterations = 0;
  bool empty_result = false;

  friend bool operator==(const SubtableRecord&, const SubtableRecord&) = default;
};

SubtableRecord make_subtable_record(const Example& example, const PipelineResult& result);
std::string serialize_subtable(const SubtableRecord& record);
// Throws CorpusError.
SubtableRecord parse_subtable(std::string_view json_line, std::size_t line_no = 0);
std::vector<SubtableRecord> load_subtables(const std::filesystem::path& path);

// {"prompt", "target", "m", "n", "table_id", "question_id", "window_origin": [r, c], "augmented"}
std::string serialize_pair(const TrainingPair& pair);
// {"(m,n)": count, ...}
std::string serialize_histogram(const Histogram& histogram);

// Aligned plain-text rendering for terminals.
std::string format_table(const Table& table);

}  // namespace tabsel
