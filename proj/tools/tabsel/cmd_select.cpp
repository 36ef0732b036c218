#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <json.hpp>
#include <memory>
#include <optional>
#include <thread>

#include "commands.hpp"
#include "tabsel/pipeline.hpp"
#include "tabsel/representation.hpp"
#include "tabsel/selector.hpp"

namespace tabsel::cli {
namespace {

struct SelectOptions {
  std::filesystem::path corpus;
  std::string selector = "oracle";
  std::size_t window = 4;
  bool span_columns = false;
  std::string endpoint;
  std::string model;
  std::string api_key;
  std::size_t max_iters = 16;
  bool trace = false;
  std::filesystem::path trace_out;
  std::filesystem::path out;
  std::size_t jobs = 1;
  std::filesystem::path template_path;
  int retries = 2;
  int timeout_ms = 30000;
  bool lenient = false;
  bool quiet = false;
};

nlohmann::json table_json(const Table& t) {
  return {{"row_ids", t.row_ids()}, {"col_ids", t.col_ids()}, {"headers", t.headers()}, {"cells", t.cells()}};
}

std::unique_ptr<Selector> make_selector(const SelectOptions& o) {
  if (o.selector == "oracle") return std::make_unique<OracleSelector>();
  RemoteSelectorConfig cfg;
  cfg.endpoint = o.endpoint;
  cfg.model = o.model;
  cfg.api_key = o.api_key;
  cfg.retries = o.retries;
  cfg.timeout = std::chrono::milliseconds(o.timeout_ms);
  if (cfg.endpoint.empty()) throw UsageError("--selector remote needs --endpoint or SELECTOR_ENDPOINT");
  PromptTemplate tpl = o.template_path.empty() ? PromptTemplate::builtin() : PromptTemplate::load(o.template_path);
  return std::make_unique<RemoteSelector>(cfg, std::move(tpl));
}

void run(const SelectOptions& o) {
  const std::vector<Example> examples = read_corpus(o.corpus, o.lenient);
  const std::unique_ptr<Selector> selector = make_selector(o);

  PipelineConfig cfg;
  cfg.window = window_config(o.window, o.span_columns);
  cfg.max_iterations = o.max_iters;
  cfg.keep_tables = o.trace || !o.trace_out.empty();
  cfg.validate();

  std::vector<std::optional<PipelineResult>> results(examples.size());
  std::vector<std::exception_ptr> errors(examples.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < examples.size(); i = next++) {
      const Example& ex = examples[i];
      try {
        results[i] = select_subtable(ex.table, ex.question, *selector, &ex.annotation, cfg);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (std::size_t j = 1; j < std::min(o.jobs, examples.size()); ++j) pool.emplace_back(worker);
    worker();
  }

  std::ofstream out;
  if (!o.out.empty()) {
    out.open(o.out, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + o.out.string());
  }
  std::ofstream trace_out;
  if (!o.trace_out.empty()) {
    trace_out.open(o.trace_out, std::ios::binary);
    if (!trace_out) throw std::runtime_error("cannot write " + o.trace_out.string());
  }

  std::size_t failed = 0;
  for (std::size_t i = 0; i < examples.size(); ++i) {
    const Example& ex = examples[i];
    if (errors[i]) {
      ++failed;
      try {
        std::rethrow_exception(errors[i]);
      } catch (const std::exception& e) {
        std::cerr << ex.table_id << '/' << ex.question_id << ": " << e.what() << '\n';
      }
      continue;
    }
    const PipelineResult& res = *results[i];
    const auto& its = res.trace.iterations;

    if (!o.quiet) {
      std::cout << "== " << ex.table_id << '/' << ex.question_id << "  " << ex.table.rows() << 'x'
                << ex.table.cols() << " -> " << res.table.rows() << 'x' << res.table.cols() << ", "
                << its.size() << (its.size() == 1 ? " iteration" : " iterations")
                << (res.trace.converged ? "" : " (not converged)") << (res.trace.empty_result ? " (empty)" : "")
                << '\n';
      if (o.trace) {
        for (std::size_t k = 0; k < its.size(); ++k) {
          const IterationRecord& it = its[k];
          std::cout << "-- iteration " << k + 1 << ": " << it.input_rows << 'x' << it.input_cols << ", "
                    << it.windows << (it.windows == 1 ? " window, " : " windows, ") << it.union_cells << " selected cells, " << it.output_cells
                    << " cells out, " << it.parse_warnings << " parse warnings\n";
          if (it.output) std::cout << format_table(*it.output);
        }
      } else {
        std::cout << format_table(res.table);
      }
    }

    if (trace_out.is_open()) {
      for (std::size_t k = 0; k < its.size(); ++k) {
        const IterationRecord& it = its[k];
        nlohmann::json j = {{"table_id", ex.table_id},
                            {"question_id", ex.question_id},
                            {"iteration", k + 1},
                            {"input_rows", it.input_rows},
                            {"input_cols", it.input_cols},
                            {"windows", it.windows},
                            {"union_cells", it.union_cells},
                            {"output_cells", it.output_cells},
                            {"parse_warnings", it.parse_warnings},
                            {"elapsed_us", std::chrono::duration_cast<std::chrono::microseconds>(it.elapsed).count()}};
        if (it.output) j["table"] = table_json(*it.output);
        trace_out << j.dump() << '\n';
      }
    }
    if (out.is_open()) out << serialize_subtable(make_subtable_record(ex, res)) << '\n';
  }

  if (failed > 0) {
    throw std::runtime_error(std::to_string(failed) + " of " + std::to_string(examples.size()) +
                             " records failed");
  }
}

}  // namespace

void add_select(CLI::App& app) {
  auto o = std::make_shared<SelectOptions>();
  CLI::App* cmd = app.add_subcommand("select", "Run the selection loop over every record of a corpus");
  cmd->add_option("corpus,--corpus", o->corpus, "JSON-lines corpus")->required()->check(CLI::ExistingFile);
  cmd->add_option("--selector", o->selector, "Selector backend")
      ->check(CLI::IsMember({"oracle", "remote"}))
      ->capture_default_str();
  cmd->add_option("--window", o->window, "Window size")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_flag("--span-columns", o->span_columns, "Windows cover all columns (window x n)");
  cmd->add_option("--endpoint", o->endpoint, "Chat-completions URL")->envname("SELECTOR_ENDPOINT");
  cmd->add_option("--model", o->model, "Model name sent to the endpoint")->envname("SELECTOR_MODEL");
  cmd->add_option("--api-key", o->api_key, "Bearer token")->envname("SELECTOR_API_KEY");
  cmd->add_option("--max-iters", o->max_iters, "Iteration cap")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_flag("--trace", o->trace, "Print every iteration's table");
  cmd->add_option("--trace-out", o->trace_out, "Write per-iteration records as JSON lines");
  cmd->add_option("-o,--out", o->out, "Write subtables as JSON lines");
  cmd->add_option("-j,--jobs", o->jobs, "Records processed in parallel")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--template", o->template_path, "Prompt template file")->check(CLI::ExistingFile);
  cmd->add_option("--retries", o->retries, "Remote retries per window")->check(CLI::NonNegativeNumber)->capture_default_str();
  cmd->add_option("--timeout", o->timeout_ms, "Remote timeout in milliseconds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_flag("--lenient", o->lenient, "Skip malformed corpus lines instead of failing");
  cmd->add_flag("-q,--quiet", o->quiet, "Do not print tables");
  cmd->callback([o] { run(*o); });
}

}  // namespace tabsel::cli
