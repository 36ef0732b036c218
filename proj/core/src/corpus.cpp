#include "tabsel/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "tabsel/csv.hpp"
#include "text_util.hpp"

namespace tabsel {
namespace {

using nlohmann::json;

std::string cell_text(const json& v, std::size_t line_no) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number() || v.is_boolean()) return v.dump();
  if (v.is_null()) return "";
  throw CorpusError(line_no, "table cells must be strings or numbers");
}

std::vector<std::string> string_array(const json& j, const char* field, std::size_t line_no) {
  if (!j.contains(field)) return {};
  const json& arr = j.at(field);
  if (!arr.is_array()) throw CorpusError(line_no, std::string("\"") + field + "\" must be an array");
  std::vector<std::string> out;
  for (const auto& v : arr) out.push_back(cell_text(v, line_no));
  return out;
}

ColumnRef column_ref(const json& v, std::size_t line_no) {
  if (v.is_number_unsigned()) return v.get<std::size_t>();
  if (v.is_string()) return v.get<std::string>();
  throw CorpusError(line_no, "column references must be a non-negative index or a header name");
}

json column_ref_json(const ColumnRef& ref) {
  return std::visit([](const auto& v) { return json(v); }, ref);
}

std::size_t resolve_column(const ColumnRef& ref, const std::vector<std::string>& headers,
                           std::size_t line_no) {
  if (const auto* index = std::get_if<std::size_t>(&ref)) {
    if (*index >= headers.size()) {
      throw CorpusError(line_no, "column index " + std::to_string(*index) + " out of range (" +
                                     std::to_string(headers.size()) + " columns)");
    }
    return *index;
  }
  const std::string& name = std::get<std::string>(ref);
  const auto hits = std::count(headers.begin(), headers.end(), name);
  if (hits == 0) throw CorpusError(line_no, "no column named \"" + name + "\"");
  if (hits > 1) throw CorpusError(line_no, "column name \"" + name + "\" is ambiguous");
  return static_cast<std::size_t>(std::find(headers.begin(), headers.end(), name) - headers.begin());
}

json table_json(const Table& table) {
  return {{"row_ids", table.row_ids()},
          {"col_ids", table.col_ids()},
          {"headers", table.headers()},
          {"cells", table.cells()}};
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError(0, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

CorpusRecord parse_record(std::string_view json_line, std::size_t line_no) {
  json j = json::parse(json_line, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) throw CorpusError(line_no, "not a JSON object");

  CorpusRecord rec;
  try {
    rec.table_id = j.contains("table_id") ? cell_text(j["table_id"], line_no) : "t" + std::to_string(line_no);
    rec.question_id =
        j.contains("question_id") ? cell_text(j["question_id"], line_no) : "q" + std::to_string(line_no);
    if (!j.contains("question") || !j["question"].is_string()) {
      throw CorpusError(line_no, "missing string field \"question\"");
    }
    rec.question = j["question"].get<std::string>();

    if (j.contains("table_file")) {
      if (!j["table_file"].is_string()) throw CorpusError(line_no, "\"table_file\" must be a string");
      rec.table_file = j["table_file"].get<std::string>();
    } else {
      if (!j.contains("headers")) throw CorpusError(line_no, "missing \"headers\" (or \"table_file\")");
      rec.headers = string_array(j, "headers", line_no);
      if (!j.contains("rows") || !j["rows"].is_array()) {
        throw CorpusError(line_no, "missing array field \"rows\"");
      }
      for (const auto& row : j["rows"]) {
        if (!row.is_array()) throw CorpusError(line_no, "every row must be an array");
        auto& out = rec.rows.emplace_back();
        for (const auto& v : row) out.push_back(cell_text(v, line_no));
      }
    }

    if (j.contains("conditions")) {
      if (!j["conditions"].is_array()) throw CorpusError(line_no, "\"conditions\" must be an array");
      for (const auto& c : j["conditions"]) {
        if (!c.is_object() || !c.contains("column") || !c.contains("op") || !c.contains("value")) {
          throw CorpusError(line_no, "conditions need \"column\", \"op\" and \"value\"");
        }
        if (!c["op"].is_string()) throw CorpusError(line_no, "condition \"op\" must be a string");
        rec.conditions.push_back(
            {column_ref(c["column"], line_no), c["op"].get<std::string>(), cell_text(c["value"], line_no)});
      }
    }
    if (!j.contains("answer_columns") || !j["answer_columns"].is_array()) {
      throw CorpusError(line_no, "missing array field \"answer_columns\"");
    }
    for (const auto& c : j["answer_columns"]) rec.answer_columns.push_back(column_ref(c, line_no));
    rec.answers = string_array(j, "answers", line_no);
  } catch (const json::exception& e) {
    throw CorpusError(line_no, e.what());
  }
  return rec;
}

Example resolve_record(const CorpusRecord& record, const std::filesystem::path& base_dir,
                       std::size_t line_no) {
  std::vector<std::string> headers = record.headers;
  std::vector<std::vector<std::string>> rows = record.rows;
  if (record.table_file) {
    std::filesystem::path path = *record.table_file;
    if (path.is_relative()) path = base_dir / path;
    try {
      auto csv = read_csv(path);
      if (csv.empty()) throw CorpusError(line_no, "CSV table " + path.string() + " is empty");
      headers = std::move(csv.front());
      rows.assign(std::make_move_iterator(csv.begin() + 1), std::make_move_iterator(csv.end()));
    } catch (const InvalidArgument& e) {
      throw CorpusError(line_no, e.what());
    }
  }

  Example ex;
  ex.table_id = record.table_id;
  ex.question_id = record.question_id;
  try {
    ex.table = Table::from_rows(std::move(headers), std::move(rows));
    ex.question = Question(record.question);
    for (const auto& c : record.conditions) {
      ex.annotation.conditions.push_back(
          {resolve_column(c.column, ex.table.headers(), line_no), parse_op(c.op), c.value});
    }
    for (const auto& ref : record.answer_columns) {
      ex.annotation.answer_columns.insert(resolve_column(ref, ex.table.headers(), line_no));
    }
    ex.annotation.gold_answers = record.answers;
    ex.annotation.validate(ex.table.cols());
  } catch (const CorpusError&) {
    throw;
  } catch (const Error& e) {
    throw CorpusError(line_no, e.what());
  }
  if (ex.table.empty()) throw CorpusError(line_no, "table has no rows or no columns");
  return ex;
}

CorpusRecord to_record(const Example& example) {
  CorpusRecord rec;
  rec.table_id = example.table_id;
  rec.question_id = example.question_id;
  rec.headers = example.table.headers();
  rec.rows = example.table.cells();
  rec.question = example.question.text();
  for (const auto& c : example.annotation.conditions) {
    rec.conditions.push_back({c.column, std::string(op_name(c.op)), c.value});
  }
  for (std::size_t c : example.annotation.answer_columns) rec.answer_columns.emplace_back(c);
  rec.answers = example.annotation.gold_answers;
  return rec;
}

std::string serialize_record(const CorpusRecord& record) {
  json j;
  j["table_id"] = record.table_id;
  j["question_id"] = record.question_id;
  if (record.table_file) {
    j["table_file"] = *record.table_file;
  } else {
    j["headers"] = record.headers;
    j["rows"] = record.rows;
  }
  j["question"] = record.question;
  j["conditions"] = json::array();
  for (const auto& c : record.conditions) {
    j["conditions"].push_back({{"column", column_ref_json(c.column)}, {"op", c.op}, {"value", c.value}});
  }
  j["answer_columns"] = json::array();
  for (const auto& ref : record.answer_columns) j["answer_columns"].push_back(column_ref_json(ref));
  j["answers"] = record.answers;
  return j.dump();
}

CorpusLoadResult load_corpus(const std::filesystem::path& path, bool lenient) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError(0, "cannot open corpus " + path.string());
  const std::filesystem::path base_dir = path.parent_path();

  CorpusLoadResult result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    try {
      result.examples.push_back(resolve_record(parse_record(line, line_no), base_dir, line_no));
    } catch (const CorpusError& e) {
      if (!lenient) throw;
      result.skipped.push_back(e);
    }
  }
  return result;
}

void write_corpus(const std::filesystem::path& path, const std::vector<Example>& examples) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CorpusError(0, "cannot write " + path.string());
  for (const auto& ex : examples) out << serialize_record(to_record(ex)) << '\n';
}

SubtableRecord make_subtable_record(const Example& example, const PipelineResult& result) {
  return {example.table_id,
          example.question_id,
          result.table,
          result.trace.converged,
          result.trace.iterations.size(),
          result.trace.empty_result};
}

std::string serialize_subtable(const SubtableRecord& record) {
  json j = table_json(record.table);
  j["table_id"] = record.table_id;
  j["question_id"] = record.question_id;
  j["converged"] = record.converged;
  j["iterations"] = record.iterations;
  j["empty_result"] = record.empty_result;
  return j.dump();
}

SubtableRecord parse_subtable(std::string_view json_line, std::size_t line_no) {
  json j = json::parse(json_line, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) throw CorpusError(line_no, "not a JSON object");
  try {
    SubtableRecord rec;
    rec.table_id = j.at("table_id").get<std::string>();
    rec.question_id = j.at("question_id").get<std::string>();
    rec.table = Table(j.at("headers").get<std::vector<std::string>>(),
                      j.at("cells").get<std::vector<std::vector<std::string>>>(),
                      j.at("row_ids").get<std::vector<std::size_t>>(),
                      j.at("col_ids").get<std::vector<std::size_t>>());
    rec.converged = j.value("converged", true);
    rec.iterations = j.value("iterations", std::size_t{0});
    rec.empty_result = j.value("empty_result", false);
    return rec;
  } catch (const json::exception& e) {
    throw CorpusError(line_no, e.what());
  } catch (const InvalidArgument& e) {
    throw CorpusError(line_no, e.what());
  }
}

std::vector<SubtableRecord> load_subtables(const std::filesystem::path& path) {
  std::istringstream in(read_text(path));
  std::vector<SubtableRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    out.push_back(parse_subtable(line, line_no));
  }
  return out;
}

std::string serialize_pair(const TrainingPair& pair) {
  json j = {{"prompt", pair.prompt},
            {"target", pair.target},
            {"m", pair.m},
            {"n", pair.n},
            {"table_id", pair.table_id},
            {"question_id", pair.question_id},
            {"window_origin", {pair.origin_row, pair.origin_col}},
            {"augmented", pair.augmented}};
  return j.dump();
}

std::string serialize_histogram(const Histogram& histogram) {
  json j = json::object();
  for (const auto& [key, count] : histogram) {
    j["(" + std::to_string(key.first) + "," + std::to_string(key.second) + ")"] = count;
  }
  return j.dump(2);
}

std::string format_table(const Table& table) {
  std::vector<std::size_t> widths(table.cols(), 0);
  for (std::size_t c = 0; c < table.cols(); ++c) {
    widths[c] = table.header(c).size();
    for (std::size_t r = 0; r < table.rows(); ++r) widths[c] = std::max(widths[c], table.cell(r, c).size());
  }
  std::string out;
  auto emit = [&](auto&& get) {
    for (std::size_t c = 0; c < table.cols(); ++c) {
      const std::string& v = get(c);
      out += c == 0 ? "| " : " | ";
      out += v;
      out.append(widths[c] - v.size(), ' ');
    }
    out += table.cols() == 0 ? "|\n" : " |\n";
  };
  emit([&](std::size_t c) -> const std::string& { return table.header(c); });
  for (std::size_t c = 0; c < table.cols(); ++c) {
    out += c == 0 ? "|-" : "-|-";
    out.append(widths[c], '-');
  }
  out += table.cols() == 0 ? "|\n" : "-|\n";
  for (std::size_t r = 0; r < table.rows(); ++r) {
    emit([&](std::size_t c) -> const std::string& { return table.cell(r, c); });
  }
  return out;
}

}  // namespace tabsel
