#include <memory>

#include "commands.hpp"
#include "tabsel/representation.hpp"
#include "tabsel/selector.hpp"

namespace tabsel::cli {
namespace {

struct WindowsOptions {
  std::filesystem::path corpus;
  std::size_t record = 0;
  std::size_t window = 4;
  bool span_columns = false;
};

void run(const WindowsOptions& o) {
  const std::vector<Example> examples = read_corpus(o.corpus, false);
  if (o.record >= examples.size()) {
    throw UsageError("--record " + std::to_string(o.record) + " out of range; corpus has " +
                     std::to_string(examples.size()) + " records");
  }
  const Example& ex = examples[o.record];
  const std::vector<Window> windows = divide_table(ex.table, window_config(o.window, o.span_columns));
  std::cout << ex.table_id << '/' << ex.question_id << ": " << ex.table.rows() << 'x' << ex.table.cols() << ", "
            << windows.size() << (windows.size() == 1 ? " window\n" : " windows\n");
  for (const Window& w : windows) {
    std::cout << "\n-- window at (" << w.origin_row() << ", " << w.origin_col() << ")\n"
              << format_table(w.to_table()) << "target:\n"
              << encode_coordinate(w, oracle_select(w, ex.annotation)) << '\n';
  }
}

}  // namespace

void add_windows(CLI::App& app) {
  auto o = std::make_shared<WindowsOptions>();
  CLI::App* cmd = app.add_subcommand("windows", "Print the windows and oracle targets of one record");
  cmd->add_option("corpus,--corpus", o->corpus, "JSON-lines corpus")->required()->check(CLI::ExistingFile);
  cmd->add_option("--record", o->record, "0-based record index")->capture_default_str();
  cmd->add_option("--window", o->window, "Window size")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_flag("--span-columns", o->span_columns, "Windows cover all columns (window x n)");
  cmd->callback([o] { run(*o); });
}

}  // namespace tabsel::cli
