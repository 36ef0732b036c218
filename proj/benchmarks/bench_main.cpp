#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "tabsel/log.hpp"
#include "tabsel/pipeline.hpp"
#include "tabsel/representation.hpp"
#include "tabsel/selector.hpp"
#include "tabsel/windowing.hpp"

using namespace tabsel;

namespace {

Table random_table(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> value(0, 9);
  std::vector<std::string> headers;
  for (std::size_t c = 0; c < cols; ++c) headers.push_back("c" + std::to_string(c));
  std::vector<std::vector<std::string>> cells(rows, std::vector<std::string>(cols));
  for (auto& row : cells) {
    for (auto& cell : row) cell = std::to_string(value(rng));
  }
  return Table::from_rows(std::move(headers), std::move(cells));
}

Annotation two_conditions(std::size_t cols) {
  Annotation ann;
  ann.conditions = {{0, Op::kEquals, "3"}, {cols - 1, Op::kGreaterThan, "4"}};
  ann.answer_columns = {cols / 2};
  return ann;
}

void BM_DivideTable(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Table t = random_table(n, n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(divide_table(t, WindowConfig::square(4)));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>((n - 3) * (n - 3)));
}
BENCHMARK(BM_DivideTable)->Arg(16)->Arg(64)->Arg(256);

void BM_OraclePipeline(benchmark::State& state) {
  const auto rows = static_cast<std::size_t>(state.range(0));
  const auto cols = static_cast<std::size_t>(state.range(1));
  Table t = random_table(rows, cols, 2);
  Annotation ann = two_conditions(cols);
  Question q("which values?");
  OracleSelector oracle;
  PipelineConfig cfg;
  cfg.jobs = static_cast<std::size_t>(state.range(2));
  for (auto _ : state) benchmark::DoNotOptimize(select_subtable(t, q, oracle, &ann, cfg));
  state.SetLabel(std::to_string(rows) + "x" + std::to_string(cols) + " jobs=" + std::to_string(cfg.jobs));
}
BENCHMARK(BM_OraclePipeline)
    ->Args({50, 8, 1})
    ->Args({200, 12, 1})
    ->Args({1000, 20, 1})
    ->Args({1000, 20, 4})
    ->Unit(benchmark::kMillisecond);

void BM_CoordinateCodec(benchmark::State& state) {
  Table t = random_table(4, 4, 3);
  Window w = Window::whole(t);
  CellSelection sel = oracle_select(w, two_conditions(4));
  if (!sel.has_columns()) sel.add_cell({0, 0});
  for (auto _ : state) {
    std::string text = encode_coordinate(w, sel);
    benchmark::DoNotOptimize(decode_coordinate(text, w));
  }
}
BENCHMARK(BM_CoordinateCodec);

void BM_TableCodec(benchmark::State& state) {
  Table t = random_table(4, 4, 4);
  Window w = Window::whole(t);
  CellSelection sel = select_all(t);
  for (auto _ : state) {
    std::string text = encode_table(w, sel);
    benchmark::DoNotOptimize(decode_table(text, w));
  }
}
BENCHMARK(BM_TableCodec);

void BM_RenderPrompt(benchmark::State& state) {
  Table t = random_table(4, 4, 5);
  Window w = Window::whole(t);
  const PromptTemplate tpl = PromptTemplate::builtin();
  for (auto _ : state) benchmark::DoNotOptimize(render_prompt(w, "Which rows have c0 equal to 3?", tpl));
}
BENCHMARK(BM_RenderPrompt);

}  // namespace

int main(int argc, char** argv) {
  set_log_sink({});
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
