#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"
#include "tabsel/errors.hpp"
#include "tabsel/log.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Question-driven subtable selection over tabular corpora"};
  app.require_subcommand(1);
  app.add_flag_callback(
      "-v,--verbose",
      [] {
        tabsel::set_log_sink([](tabsel::LogLevel, std::string_view msg) { std::cerr << msg << '\n'; });
      },
      "Log every library message to stderr");

  tabsel::cli::add_select(app);
  tabsel::cli::add_datagen(app);
  tabsel::cli::add_eval(app);
  tabsel::cli::add_windows(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const tabsel::cli::UsageError& e) {
    std::cerr << "error: " << e.what() << "\nRun with --help for usage.\n";
    return 2;
  } catch (const tabsel::CorpusError& e) {
    std::cerr << "corpus error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
