#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>

#include "tabsel/table.hpp"

namespace tabsel {

// Selector prompt with a fixed instruction and two placeholders, {question}
// and {table}, each of which must occur exactly once.
class PromptTemplate {
 public:
  explicit PromptTemplate(std::string text);

  static const PromptTemplate& builtin();
  static PromptTemplate load(const std::filesystem::path& path);

  const std::string& text() const noexcept { return text_; }

 private:
  std::string text_;
};

// Header line, then one line per row; cells joined by " | ". Backslash, pipe,
// CR and LF inside cells are backslash-escaped so the layout is unambiguous.
std::string serialize_window(const Window& window);

std::string render_prompt(const Window& window, const std::string& question,
                          const PromptTemplate& tpl = PromptTemplate::builtin());

// Outcome of decoding selector output. Decoding never throws on bad input;
// anything that cannot be interpreted is dropped and counted.
struct DecodeResult {
  CellSelection selection;
  std::size_t warnings = 0;
  // Table codec only: serialized values that matched several window cells.
  std::size_t ambiguities = 0;
};

// Coordinate representation: a grid shaped like the window, one line per
// window row, with <r,c> (window-local, 0-based) for selected cells and
// <empty,empty> for the rest. Selected columns that own no selected cell are
// listed on a trailing marker line as <header,c> tokens, which is how a
// headers-only selection is written.
//
// Throws InvalidSelection if the selection reaches outside the window.
std::string encode_coordinate(const Window& window, const CellSelection& selection);
DecodeResult decode_coordinate(std::string_view text, const Window& window);

// Index representation: "rows: 0, 2" and "columns: Name | Total". Decoding
// selects the full cross product, so only rectangles survive a round trip.
std::string encode_index(const Window& window, const CellSelection& selection);
DecodeResult decode_index(std::string_view text, const Window& window);

// Table representation: the materialized rectangle serialized like a window.
// Decoding re-identifies each cell by header and content; when a value occurs
// more than once in its column the first match in row order wins.
std::string encode_table(const Window& window, const CellSelection& selection);
DecodeResult decode_table(std::string_view text, const Window& window);

}  // namespace tabsel
