#pragma once

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <stdexcept>
#include <string>

#include "tabsel/corpus.hpp"
#include "tabsel/windowing.hpp"

namespace tabsel::cli {

// Raised for bad flag combinations found after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void add_select(CLI::App& app);
void add_datagen(CLI::App& app);
void add_eval(CLI::App& app);
void add_windows(CLI::App& app);

inline WindowConfig window_config(std::size_t w, bool span_columns) {
  return span_columns ? WindowConfig::spanning_columns(w) : WindowConfig::square(w);
}

// Loads a corpus, printing skipped lines when lenient.
inline std::vector<Example> read_corpus(const std::filesystem::path& path, bool lenient) {
  CorpusLoadResult loaded = load_corpus(path, lenient);
  for (const auto& e : loaded.skipped) std::cerr << "skipped " << path.string() << ": " << e.what() << '\n';
  if (loaded.examples.empty()) throw UsageError("corpus " + path.string() + " has no usable records");
  return std::move(loaded.examples);
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

}  // namespace tabsel::cli
