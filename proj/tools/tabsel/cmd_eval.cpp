#include <fstream>
#include <json.hpp>
#include <map>
#include <memory>
#include <utility>

#include "commands.hpp"
#include "tabsel/evaluation.hpp"

namespace tabsel::cli {
namespace {

struct EvalOptions {
  std::filesystem::path corpus;
  std::filesystem::path subtables;
  std::filesystem::path answers;
  std::filesystem::path out;
  bool lenient = false;
};

using Key = std::pair<std::string, std::string>;

// {"table_id", "question_id", "answer"} per line.
std::map<Key, std::string> read_answers(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::map<Key, std::string> out;
  std::string line;
  for (std::size_t no = 1; std::getline(in, line); ++no) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("answer")) {
      throw CorpusError(no, "answer lines need \"table_id\", \"question_id\" and \"answer\"");
    }
    out[{j.value("table_id", ""), j.value("question_id", "")}] = j["answer"].is_string() ? j["answer"].get<std::string>()
                                                                                        : j["answer"].dump();
  }
  return out;
}

void run(const EvalOptions& o) {
  const std::vector<Example> examples = read_corpus(o.corpus, o.lenient);
  std::map<Key, SubtableRecord> subtables;
  for (auto& rec : load_subtables(o.subtables)) {
    Key key{rec.table_id, rec.question_id};
    subtables.insert_or_assign(std::move(key), std::move(rec));
  }
  const std::map<Key, std::string> answers = o.answers.empty() ? std::map<Key, std::string>{} : read_answers(o.answers);

  std::vector<ExampleResult> results;
  std::size_t missing = 0;
  for (const auto& ex : examples) {
    auto it = subtables.find({ex.table_id, ex.question_id});
    if (it == subtables.end()) {
      std::cerr << "no subtable for " << ex.table_id << '/' << ex.question_id << '\n';
      ++missing;
      continue;
    }
    const SubtableRecord& sub = it->second;
    const GoldTable gold = gold_table(ex.table, ex.annotation);

    ExampleResult r;
    r.table_id = ex.table_id;
    r.question_id = ex.question_id;
    r.original_cells = ex.table.cell_count();
    r.subtable_cells = sub.table.cell_count();
    r.score = score_selection(sub.table, gold);
    r.iterations = sub.iterations;
    r.converged = sub.converged;
    r.relevant_columns = ex.annotation.relevant_columns().size();
    r.answer_rows = gold.rows.size();
    if (auto a = answers.find({ex.table_id, ex.question_id}); a != answers.end() && !ex.annotation.gold_answers.empty()) {
      r.exact_match = exact_match(a->second, ex.annotation.gold_answers);
    }
    results.push_back(std::move(r));
  }
  if (missing > 0) throw std::runtime_error(std::to_string(missing) + " corpus records have no subtable");

  const Report report = corpus_report(results);
  std::cout << report_to_text(report);
  if (!o.out.empty()) write_text(o.out, report_to_json(report) + "\n");
}

}  // namespace

void add_eval(CLI::App& app) {
  auto o = std::make_shared<EvalOptions>();
  CLI::App* cmd = app.add_subcommand("eval", "Score a subtable file against a corpus");
  cmd->add_option("corpus,--corpus", o->corpus, "JSON-lines corpus")->required()->check(CLI::ExistingFile);
  cmd->add_option("subtables,--subtables", o->subtables, "Subtables written by `select --out`")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--answers", o->answers, "Reader answers, JSON lines with table_id/question_id/answer")
      ->check(CLI::ExistingFile);
  cmd->add_option("-o,--out", o->out, "Write the report as JSON");
  cmd->add_flag("--lenient", o->lenient, "Skip malformed corpus lines instead of failing");
  cmd->callback([o] { run(*o); });
}

}  // namespace tabsel::cli
