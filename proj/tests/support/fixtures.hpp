#pragma once

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>
#include <vector>

#include "tabsel/corpus.hpp"

#ifndef TABSEL_DATA_DIR
#error "TABSEL_DATA_DIR must be defined"
#endif

namespace testgen {

inline std::filesystem::path data_dir() { return TABSEL_DATA_DIR; }
inline std::filesystem::path fixture(const std::string& name) { return data_dir() / "fixtures" / name; }

inline tabsel::Example load_fixture(const std::string& name) {
  auto loaded = tabsel::load_corpus(fixture(name + ".jsonl"));
  return loaded.examples.at(0);
}

inline nlohmann::json expected() {
  std::ifstream in(fixture("expected.json"));
  return nlohmann::json::parse(in);
}

inline tabsel::Table table_from_json(const nlohmann::json& j) {
  return tabsel::Table(j.at("headers").get<std::vector<std::string>>(),
                       j.at("cells").get<std::vector<std::vector<std::string>>>(),
                       j.at("row_ids").get<std::vector<std::size_t>>(),
                       j.at("col_ids").get<std::vector<std::size_t>>());
}

}  // namespace testgen
