#include "tabsel/evaluation.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <functional>
#include <json.hpp>
#include <sstream>

#include "tabsel/errors.hpp"
#include "text_util.hpp"

namespace tabsel {

GoldTable gold_table(const Table& table, const Annotation& annotation) {
  GoldTable gold;
  for (std::size_t c : annotation.relevant_columns()) {
    if (table.local_col(c)) gold.columns.insert(c);
  }
  for (std::size_t r = 0; r < table.rows(); ++r) {
    bool all = true;
    for (const auto& cond : annotation.conditions) {
      auto c = table.local_col(cond.column);
      if (!c || !condition_satisfied(table.cell(r, *c), cond)) {
        all = false;
        break;
      }
    }
    if (!all) continue;
    gold.rows.insert(table.row_ids()[r]);
    for (std::size_t c : gold.columns) gold.cells.insert({table.row_ids()[r], c});
  }
  return gold;
}

SelectionScore score_cells(const CellSet& predicted, const CellSet& gold) {
  SelectionScore s;
  s.predicted = predicted.size();
  s.gold = gold.size();
  for (const auto& cell : predicted) {
    if (gold.contains(cell)) ++s.true_positive;
  }
  s.precision = s.predicted == 0 ? 0.0
                                 : static_cast<double>(s.true_positive) / static_cast<double>(s.predicted);
  s.recall = s.gold == 0 ? 1.0 : static_cast<double>(s.true_positive) / static_cast<double>(s.gold);
  return s;
}

SelectionScore score_selection(const Table& predicted, const GoldTable& gold) {
  return score_cells(predicted.coordinates(), gold.cells);
}

std::string normalize_answer(std::string_view text) {
  std::string collapsed;
  bool pending_space = false;
  for (char ch : detail::trim(text)) {
    if (detail::is_space(ch)) {
      pending_space = true;
      continue;
    }
    if (pending_space) collapsed += ' ';
    pending_space = false;
    collapsed += ch;
  }
  collapsed = detail::lower(collapsed);
  if (auto number = parse_number(collapsed)) {
    double v = *number == 0.0 ? 0.0 : *number;
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec == std::errc()) return std::string(buf, ptr);
  }
  return collapsed;
}

namespace {

std::vector<std::string> split_answers(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    bool at_end = i == text.size();
    bool pipe = !at_end && text[i] == '|';
    bool comma = !at_end && text[i] == ',' && i + 1 < text.size() && text[i + 1] == ' ';
    if (!at_end && !pipe && !comma) continue;
    out.push_back(normalize_answer(text.substr(start, i - start)));
    start = i + (comma ? 2 : 1);
    if (comma) ++i;
  }
  return out;
}

template <typename Key>
std::vector<BucketStats> bucketize(std::span<const ExampleResult> results,
                                   const std::vector<std::size_t>& edges, Key key) {
  std::vector<BucketStats> buckets(edges.size() + 1);
  for (std::size_t b = 0; b < buckets.size(); ++b) {
    const std::size_t lo = b == 0 ? 0 : edges[b - 1];
    if (b == edges.size()) {
      buckets[b].label = std::to_string(lo) + "+";
    } else if (edges[b] == lo + 1) {
      buckets[b].label = std::to_string(lo);
    } else {
      buckets[b].label = std::to_string(lo) + "-" + std::to_string(edges[b] - 1);
    }
  }
  std::vector<std::size_t> em_hits(buckets.size(), 0);
  std::vector<bool> em_complete(buckets.size(), true);
  for (const auto& r : results) {
    const std::size_t v = key(r);
    const std::size_t b =
        static_cast<std::size_t>(std::upper_bound(edges.begin(), edges.end(), v) - edges.begin());
    auto& s = buckets[b];
    ++s.count;
    s.mean_precision += r.score.precision;
    s.mean_recall += r.score.recall;
    s.mean_reduction_ratio += r.reduction_ratio();
    if (r.exact_match) {
      em_hits[b] += *r.exact_match ? 1 : 0;
    } else {
      em_complete[b] = false;
    }
  }
  for (std::size_t b = 0; b < buckets.size(); ++b) {
    auto& s = buckets[b];
    if (s.count == 0) continue;
    const double n = static_cast<double>(s.count);
    s.mean_precision /= n;
    s.mean_recall /= n;
    s.mean_reduction_ratio /= n;
    if (em_complete[b]) s.exact_match = static_cast<double>(em_hits[b]) / n;
  }
  return buckets;
}

nlohmann::json bucket_json(const std::vector<BucketStats>& buckets) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& b : buckets) {
    nlohmann::json j = {{"bucket", b.label},
                        {"count", b.count},
                        {"precision", b.mean_precision},
                        {"recall", b.mean_recall},
                        {"reduction_ratio", b.mean_reduction_ratio}};
    if (b.exact_match) j["exact_match"] = *b.exact_match;
    out.push_back(std::move(j));
  }
  return out;
}

std::string fixed(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

void bucket_text(std::ostringstream& os, const std::string& title,
                 const std::vector<BucketStats>& buckets) {
  char line[160];
  os << '\n' << title << '\n';
  std::snprintf(line, sizeof(line), "  %-12s %7s %10s %10s %10s %10s\n", "bucket", "count",
                "precision", "recall", "ratio", "EM");
  os << line;
  for (const auto& b : buckets) {
    std::snprintf(line, sizeof(line), "  %-12s %7zu %10s %10s %10s %10s\n", b.label.c_str(), b.count,
                  fixed(b.mean_precision).c_str(), fixed(b.mean_recall).c_str(),
                  fixed(b.mean_reduction_ratio).c_str(),
                  b.exact_match ? fixed(*b.exact_match).c_str() : "-");
    os << line;
  }
}

}  // namespace

bool exact_match(std::string_view predicted, const std::vector<std::string>& gold_answers) {
  if (gold_answers.empty()) return false;
  if (gold_answers.size() == 1) return normalize_answer(predicted) == normalize_answer(gold_answers[0]);

  std::vector<std::string> pred = split_answers(predicted);
  std::vector<std::string> gold;
  for (const auto& g : gold_answers) gold.push_back(normalize_answer(g));
  std::sort(pred.begin(), pred.end());
  std::sort(gold.begin(), gold.end());
  return pred == gold;
}

Report corpus_report(std::span<const ExampleResult> results, const ReportOptions& opts) {
  if (results.empty()) throw InvalidArgument("cannot report on zero results");
  Report report;
  report.examples = results.size();
  std::size_t em_hits = 0;
  bool em_complete = true;
  for (const auto& r : results) {
    report.mean_precision += r.score.precision;
    report.mean_recall += r.score.recall;
    report.mean_reduction_ratio += r.reduction_ratio();
    ++report.iteration_histogram[r.iterations];
    if (!r.converged) ++report.non_converged;
    if (r.exact_match) {
      em_hits += *r.exact_match ? 1 : 0;
    } else {
      em_complete = false;
    }
  }
  const double n = static_cast<double>(results.size());
  report.mean_precision /= n;
  report.mean_recall /= n;
  report.mean_reduction_ratio /= n;
  if (em_complete) report.exact_match = static_cast<double>(em_hits) / n;

  report.by_table_size =
      bucketize(results, opts.size_edges, [](const ExampleResult& r) { return r.original_cells; });
  report.by_relevant_columns =
      bucketize(results, opts.column_edges, [](const ExampleResult& r) { return r.relevant_columns; });
  report.by_answer_rows =
      bucketize(results, opts.answer_row_edges, [](const ExampleResult& r) { return r.answer_rows; });
  return report;
}

std::string report_to_json(const Report& report) {
  nlohmann::json hist = nlohmann::json::object();
  for (const auto& [iters, count] : report.iteration_histogram) hist[std::to_string(iters)] = count;
  nlohmann::json j = {
      {"examples", report.examples},
      {"precision", report.mean_precision},
      {"recall", report.mean_recall},
      {"reduction_ratio", report.mean_reduction_ratio},
      {"non_converged", report.non_converged},
      {"iteration_histogram", hist},
      {"by_table_size", bucket_json(report.by_table_size)},
      {"by_relevant_columns", bucket_json(report.by_relevant_columns)},
      {"by_answer_rows", bucket_json(report.by_answer_rows)},
  };
  j["exact_match"] = report.exact_match ? nlohmann::json(*report.exact_match) : nlohmann::json(nullptr);
  return j.dump(2);
}

std::string report_to_text(const Report& report) {
  std::ostringstream os;
  os << "examples         " << report.examples << '\n'
     << "precision        " << fixed(report.mean_precision) << '\n'
     << "recall           " << fixed(report.mean_recall) << '\n'
     << "exact match      " << (report.exact_match ? fixed(*report.exact_match) : std::string("-"))
     << '\n'
     << "reduction ratio  " << fixed(report.mean_reduction_ratio) << '\n'
     << "non-converged    " << report.non_converged << '\n'
     << "iterations      ";
  for (const auto& [iters, count] : report.iteration_histogram) os << ' ' << iters << ':' << count;
  os << '\n';
  bucket_text(os, "by table size (cells)", report.by_table_size);
  bucket_text(os, "by condition+answer columns", report.by_relevant_columns);
  bucket_text(os, "by answer rows", report.by_answer_rows);
  return os.str();
}

}  // namespace tabsel
