#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <random>
#include <unistd.h>

#include "fixtures.hpp"
#include "generators.hpp"
#include "tabsel/corpus.hpp"
#include "tabsel/csv.hpp"
#include "tabsel/errors.hpp"
#include "tabsel/pipeline.hpp"
#include "tabsel/selector.hpp"

using namespace tabsel;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("tabsel_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  const fs::path& path() const { return path_; }

  fs::path write(const std::string& name, const std::string& text) const {
    fs::path p = path_ / name;
    std::ofstream(p, std::ios::binary) << text;
    return p;
  }

 private:
  fs::path path_;
};

const char* kLine =
    R"({"table_id":"t1","question_id":"q1","headers":["Name","Age","City"],)"
    R"("rows":[["Ann","31","Oslo"],["Bo","27","Rome"]],"question":"Who is 31?",)"
    R"("conditions":[{"column":"Age","op":"=","value":"31"}],"answer_columns":["Name"],"answers":["Ann"]})";

}  // namespace

TEST_CASE("column names resolve to indices") {
  Example ex = resolve_record(parse_record(kLine, 1));
  CHECK(ex.table.rows() == 2);
  CHECK(ex.table.cols() == 3);
  REQUIRE(ex.annotation.conditions.size() == 1);
  CHECK(ex.annotation.conditions[0].column == 1);
  CHECK(ex.annotation.conditions[0].op == Op::kEquals);
  CHECK(ex.annotation.answer_columns == std::set<std::size_t>{0});
  CHECK(ex.annotation.gold_answers == std::vector<std::string>{"Ann"});
  CHECK(ex.question.text() == "Who is 31?");
}

TEST_CASE("numeric cells and index references are accepted") {
  auto rec = parse_record(
      R"({"headers":["a","b"],"rows":[[1,2.5],["x","y"]],"question":"q","conditions":[{"column":0,"op":">","value":"0"}],"answer_columns":[1]})",
      7);
  CHECK(rec.table_id == "t7");
  CHECK(rec.question_id == "q7");
  Example ex = resolve_record(rec);
  CHECK(ex.table.cell(0, 1) == "2.5");
  CHECK(ex.annotation.conditions[0].op == Op::kGreaterThan);
}

TEST_CASE("bad records report their line") {
  auto reject = [](const std::string& line, const std::string& needle) {
    CAPTURE(line);
    try {
      resolve_record(parse_record(line, 4), {}, 4);
      FAIL("accepted a bad record");
    } catch (const CorpusError& e) {
      CHECK(e.line() == 4);
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  reject("not json", "not a JSON object");
  reject(R"({"headers":["a"],"rows":[["1"]],"question":"q","conditions":[{"column":"a","op":"LIKE","value":"1"}],"answer_columns":[0]})",
         "LIKE");
  reject(R"({"headers":["a"],"rows":[["1"]],"question":"q","conditions":[],"answer_columns":["zz"]})", "zz");
  reject(R"({"headers":["a","a"],"rows":[["1","2"]],"question":"q","conditions":[],"answer_columns":["a"]})",
         "ambiguous");
  reject(R"({"headers":["a","b"],"rows":[["1"]],"question":"q","conditions":[],"answer_columns":[0]})", "line 4");
  reject(R"({"headers":["a"],"rows":[["1"]],"question":"q","conditions":[],"answer_columns":[3]})", "out of range");
  reject(R"({"headers":["a"],"rows":[["1"]],"question":"q","conditions":[],"answer_columns":[]})", "line 4");
  reject(R"({"headers":["a"],"rows":[],"question":"q","conditions":[],"answer_columns":[0]})", "line 4");
  reject(R"({"headers":["a"],"rows":[["1"]],"conditions":[],"answer_columns":[0]})", "question");
}

TEST_CASE("lenient loading skips bad lines, strict loading stops") {
  TempDir dir;
  const std::string bad = R"({"headers":["a"],"rows":[["1"]],"question":"q","conditions":[],"answer_columns":["nope"]})";
  fs::path p = dir.write("c.jsonl", std::string(kLine) + "\n\n" + bad + "\n" + kLine + "\n");

  try {
    load_corpus(p);
    FAIL("strict load accepted a bad line");
  } catch (const CorpusError& e) {
    CHECK(e.line() == 3);
  }

  auto loaded = load_corpus(p, true);
  CHECK(loaded.examples.size() == 2);
  REQUIRE(loaded.skipped.size() == 1);
  CHECK(loaded.skipped[0].line() == 3);
  CHECK_THROWS_AS(load_corpus(dir.path() / "missing.jsonl"), CorpusError);
}

TEST_CASE("corpus round-trips through serialization") {
  std::mt19937_64 rng(77);
  std::vector<Example> examples;
  for (int i = 0; i < 40; ++i) {
    auto rc = testgen::random_case(rng);
    rc.example.table_id = "t" + std::to_string(i);
    rc.example.question_id = "q" + std::to_string(i);
    rc.example.annotation.gold_answers = {"a|b", "line\nbreak"};
    examples.push_back(rc.example);
  }
  examples.push_back(testgen::load_fixture("engines"));
  TempDir dir;
  write_corpus(dir.path() / "out.jsonl", examples);
  auto loaded = load_corpus(dir.path() / "out.jsonl");
  REQUIRE(loaded.examples.size() == examples.size());
  for (std::size_t i = 0; i < examples.size(); ++i) CHECK(loaded.examples[i] == examples[i]);
}

TEST_CASE("tables may live in CSV files next to the corpus") {
  TempDir dir;
  dir.write("t.csv", "Name,\"Note, long\"\r\nAnn,\"said \"\"hi\"\"\"\nBo,\"two\nlines\"\n");
  fs::path p = dir.write(
      "c.jsonl",
      R"({"table_file":"t.csv","question":"q","conditions":[{"column":"Name","op":"=","value":"Bo"}],"answer_columns":["Note, long"]})"
      "\n");
  auto loaded = load_corpus(p);
  REQUIRE(loaded.examples.size() == 1);
  const Table& t = loaded.examples[0].table;
  CHECK(t.headers() == std::vector<std::string>{"Name", "Note, long"});
  CHECK(t.cell(0, 1) == "said \"hi\"");
  CHECK(t.cell(1, 1) == "two\nlines");

  fs::path missing = dir.write("m.jsonl", R"({"table_file":"none.csv","question":"q","conditions":[],"answer_columns":[0]})");
  CHECK_THROWS_AS(load_corpus(missing), CorpusError);
}

TEST_CASE("csv parsing") {
  CHECK(parse_csv("a,b\n1,2\n") == std::vector<std::vector<std::string>>{{"a", "b"}, {"1", "2"}});
  CHECK(parse_csv("a,,\n") == std::vector<std::vector<std::string>>{{"a", "", ""}});
  CHECK(parse_csv("x\n\ny") == std::vector<std::vector<std::string>>{{"x"}, {"y"}});
  CHECK_THROWS_AS(parse_csv("\"open"), InvalidArgument);
}

TEST_CASE("subtable records round-trip") {
  const Example ex = testgen::load_fixture("engines");
  OracleSelector oracle;
  PipelineResult res = select_subtable(ex.table, ex.question, oracle, &ex.annotation, {});
  SubtableRecord rec = make_subtable_record(ex, res);
  CHECK(rec.table_id == ex.table_id);
  CHECK(rec.converged);
  CHECK(rec.iterations == res.trace.iterations.size());
  CHECK(parse_subtable(serialize_subtable(rec)) == rec);

  SubtableRecord empty;
  empty.table_id = "e";
  empty.question_id = "q";
  empty.empty_result = true;
  CHECK(parse_subtable(serialize_subtable(empty)) == empty);

  TempDir dir;
  fs::path p = dir.write("s.jsonl", serialize_subtable(rec) + "\n" + serialize_subtable(empty) + "\n");
  auto all = load_subtables(p);
  REQUIRE(all.size() == 2);
  CHECK(all[1] == empty);
  CHECK_THROWS_AS(parse_subtable("{\"table_id\":1}", 2), CorpusError);
}

TEST_CASE("pairs and histograms serialize to JSON") {
  const Example ex = testgen::load_fixture("war_losses");
  auto pairs = generate_pairs(ex.table, ex.question, ex.annotation, WindowConfig::square(3),
                              {ex.table_id, ex.question_id});
  REQUIRE(pairs.size() == 1);
  auto j = nlohmann::json::parse(serialize_pair(pairs[0]));
  CHECK(j["target"] == pairs[0].target);
  CHECK(j["m"] == 1);
  CHECK(j["n"] == 2);
  CHECK(j["window_origin"] == nlohmann::json::array({0, 0}));
  CHECK(j["augmented"] == false);
  CHECK(j["table_id"] == "war_losses");

  auto h = nlohmann::json::parse(serialize_histogram(histogram(pairs)));
  CHECK(h["(1,2)"] == 1);
}

TEST_CASE("format_table aligns columns") {
  Table t = Table::from_rows({"a", "long header"}, {{"value", "x"}});
  const std::string text = format_table(t);
  auto first_nl = text.find('\n');
  REQUIRE(first_nl != std::string::npos);
  auto second_nl = text.find('\n', first_nl + 1);
  std::string header = text.substr(0, first_nl);
  CHECK(header.find("long header") != std::string::npos);
  CHECK(header.find('|') == text.substr(first_nl + 1, second_nl - first_nl - 1).find('|'));
}
