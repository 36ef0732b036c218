#include "tabsel/representation.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "tabsel/errors.hpp"
#include "text_util.hpp"

namespace tabsel {
namespace {

constexpr std::string_view kQuestionSlot = "{question}";
constexpr std::string_view kTableSlot = "{table}";

constexpr std::string_view kBuiltinTemplate =
    "You are given a table and a question about it. Select the cells of the table that are "
    "needed to answer the question; together they form a subtable.\n"
    "Write the subtable as a grid with exactly the shape of the table body (header row "
    "excluded): one line per table row and one token per cell, separated by spaces. Write "
    "<row,column> with 0-based indices for a selected cell and <empty,empty> for a cell that "
    "is not selected. If a column is relevant but none of its cells are, add a final line "
    "with a <header,column> token for each such column.\n"
    "\n"
    "Question: {question}\n"
    "\n"
    "Table:\n"
    "{table}\n"
    "\n"
    "Subtable:\n";

std::size_t count_occurrences(std::string_view text, std::string_view needle) {
  std::size_t n = 0;
  for (std::size_t pos = text.find(needle); pos != std::string_view::npos;
       pos = text.find(needle, pos + needle.size())) {
    ++n;
  }
  return n;
}

void append_escaped(std::string& out, std::string_view cell) {
  for (char ch : cell) {
    switch (ch) {
      case '\\':
        out += "\\\\";
        break;
      case '|':
        out += "\\|";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\r':
        out += "\\r";
        break;
      default:
        out += ch;
    }
  }
}

// Splits a serialized row on unescaped '|' and undoes the escaping. Each
// delimiter is " | ", so one space is stripped on either side of it.
std::vector<std::string> split_row(std::string_view line) {
  std::vector<std::string> cells(1);
  for (std::size_t i = 0; i < line.size(); ++i) {
    char ch = line[i];
    if (ch == '\\' && i + 1 < line.size()) {
      char next = line[++i];
      cells.back() += next == 'n' ? '\n' : next == 'r' ? '\r' : next;
    } else if (ch == '|') {
      cells.emplace_back();
    } else {
      cells.back() += ch;
    }
  }
  for (std::size_t k = 0; k < cells.size(); ++k) {
    auto& cell = cells[k];
    if (k > 0 && !cell.empty() && cell.front() == ' ') cell.erase(0, 1);
    if (k + 1 < cells.size() && !cell.empty() && cell.back() == ' ') cell.pop_back();
  }
  return cells;
}

std::optional<std::size_t> parse_index(std::string_view text) {
  text = detail::trim(text);
  if (text.empty()) return std::nullopt;
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

// Local columns (in window order) and rows of a selection, validated against
// the window.
struct LocalSelection {
  std::vector<std::size_t> cols;
  std::vector<std::size_t> rows;
  std::vector<std::vector<bool>> selected;  // [row][col] over the whole window
  std::vector<bool> col_has_cell;
};

LocalSelection localize(const Window& window, const CellSelection& selection) {
  LocalSelection out;
  out.selected.assign(window.height(), std::vector<bool>(window.width(), false));
  out.col_has_cell.assign(window.width(), false);
  std::vector<bool> row_used(window.height(), false);
  std::vector<bool> col_used(window.width(), false);
  for (std::size_t c : selection.columns()) {
    auto local = window.local_col(c);
    if (!local) throw InvalidSelection("selected column " + std::to_string(c) + " is outside the window");
    col_used[*local] = true;
  }
  for (const auto& cell : selection.cells()) {
    auto r = window.local_row(cell.row);
    auto c = window.local_col(cell.col);
    if (!r || !c) {
      throw InvalidSelection("selected cell (" + std::to_string(cell.row) + "," +
                             std::to_string(cell.col) + ") is outside the window");
    }
    out.selected[*r][*c] = true;
    out.col_has_cell[*c] = true;
    row_used[*r] = true;
  }
  for (std::size_t c = 0; c < window.width(); ++c) {
    if (col_used[c]) out.cols.push_back(c);
  }
  for (std::size_t r = 0; r < window.height(); ++r) {
    if (row_used[r]) out.rows.push_back(r);
  }
  return out;
}

struct Token {
  std::string first;
  std::string second;
  bool well_formed = false;
};

// Pulls "<a,b>" tokens out of a line. Stray non-space text between tokens and
// unterminated tokens count as warnings.
std::vector<Token> scan_tokens(std::string_view line, std::size_t& warnings) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  bool stray = false;
  while (i < line.size()) {
    if (detail::is_space(line[i])) {
      ++i;
      continue;
    }
    if (line[i] != '<') {
      stray = true;
      ++i;
      continue;
    }
    std::size_t close = line.find('>', i + 1);
    if (close == std::string_view::npos) {
      ++warnings;
      break;
    }
    std::string_view body = line.substr(i + 1, close - i - 1);
    Token tok;
    std::size_t comma = body.find(',');
    if (comma != std::string_view::npos && body.find(',', comma + 1) == std::string_view::npos) {
      tok.first = detail::lower(detail::trim(body.substr(0, comma)));
      tok.second = detail::lower(detail::trim(body.substr(comma + 1)));
      tok.well_formed = true;
    }
    tokens.push_back(std::move(tok));
    i = close + 1;
  }
  if (stray) ++warnings;
  return tokens;
}

}  // namespace

PromptTemplate::PromptTemplate(std::string text) : text_(std::move(text)) {
  if (count_occurrences(text_, kQuestionSlot) != 1 || count_occurrences(text_, kTableSlot) != 1) {
    throw InvalidArgument("prompt template must contain {question} and {table} exactly once");
  }
}

const PromptTemplate& PromptTemplate::builtin() {
  static const PromptTemplate tpl{std::string(kBuiltinTemplate)};
  return tpl;
}

PromptTemplate PromptTemplate::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open prompt template " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return PromptTemplate(buf.str());
}

std::string serialize_window(const Window& window) {
  std::string out;
  for (std::size_t c = 0; c < window.width(); ++c) {
    if (c > 0) out += " | ";
    append_escaped(out, window.header(c));
  }
  for (std::size_t r = 0; r < window.height(); ++r) {
    out += '\n';
    for (std::size_t c = 0; c < window.width(); ++c) {
      if (c > 0) out += " | ";
      append_escaped(out, window.cell(r, c));
    }
  }
  return out;
}

std::string render_prompt(const Window& window, const std::string& question,
                          const PromptTemplate& tpl) {
  const std::string& text = tpl.text();
  const std::string table = serialize_window(window);
  std::string out;
  out.reserve(text.size() + question.size() + table.size());
  std::size_t i = 0;
  while (i < text.size()) {
    std::string_view rest = std::string_view(text).substr(i);
    if (rest.starts_with(kQuestionSlot)) {
      out += question;
      i += kQuestionSlot.size();
    } else if (rest.starts_with(kTableSlot)) {
      out += table;
      i += kTableSlot.size();
    } else {
      out += text[i++];
    }
  }
  return out;
}

std::string encode_coordinate(const Window& window, const CellSelection& selection) {
  const LocalSelection local = localize(window, selection);
  std::string out;
  for (std::size_t r = 0; r < window.height(); ++r) {
    if (r > 0) out += '\n';
    for (std::size_t c = 0; c < window.width(); ++c) {
      if (c > 0) out += ' ';
      if (local.selected[r][c]) {
        out += '<' + std::to_string(r) + ',' + std::to_string(c) + '>';
      } else {
        out += "<empty,empty>";
      }
    }
  }
  std::string marker;
  for (std::size_t c : local.cols) {
    if (local.col_has_cell[c]) continue;
    if (!marker.empty()) marker += ' ';
    marker += "<header," + std::to_string(c) + '>';
  }
  if (!marker.empty()) {
    if (!out.empty()) out += '\n';
    out += marker;
  }
  return out;
}

DecodeResult decode_coordinate(std::string_view text, const Window& window) {
  DecodeResult result;
  std::size_t& warnings = result.warnings;
  std::size_t grid_row = 0;

  for (std::string_view raw : detail::split_lines(text)) {
    std::string_view line = detail::trim(raw);
    if (line.empty()) continue;
    if (line.find('<') == std::string_view::npos) {
      ++warnings;
      continue;
    }
    std::vector<Token> tokens = scan_tokens(line, warnings);
    if (tokens.empty()) continue;

    if (tokens.front().well_formed && tokens.front().first == "header") {
      for (const auto& tok : tokens) {
        auto c = tok.well_formed && tok.first == "header" ? parse_index(tok.second) : std::nullopt;
        if (c && *c < window.width()) {
          result.selection.add_column(window.global_col(*c));
        } else {
          ++warnings;
        }
      }
      continue;
    }

    if (grid_row >= window.height() || tokens.size() != window.width()) ++warnings;
    for (std::size_t k = 0; k < tokens.size(); ++k) {
      const Token& tok = tokens[k];
      if (!tok.well_formed) {
        ++warnings;
        continue;
      }
      if (tok.first == "empty" && tok.second == "empty") continue;
      auto r = parse_index(tok.first);
      auto c = parse_index(tok.second);
      if (r && c && *r == grid_row && *c == k && *r < window.height() && *c < window.width()) {
        result.selection.add_cell(window.global(*r, *c));
      } else {
        ++warnings;
      }
    }
    ++grid_row;
  }
  if (grid_row < window.height()) warnings += window.height() - grid_row;
  return result;
}

std::string encode_index(const Window& window, const CellSelection& selection) {
  const LocalSelection local = localize(window, selection);
  std::string out = "rows:";
  for (std::size_t k = 0; k < local.rows.size(); ++k) {
    out += k == 0 ? " " : ", ";
    out += std::to_string(local.rows[k]);
  }
  out += "\ncolumns:";
  for (std::size_t k = 0; k < local.cols.size(); ++k) {
    out += k == 0 ? " " : " | ";
    append_escaped(out, window.header(local.cols[k]));
  }
  return out;
}

DecodeResult decode_index(std::string_view text, const Window& window) {
  DecodeResult result;
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  bool saw_rows = false;
  bool saw_cols = false;

  for (std::string_view raw : detail::split_lines(text)) {
    std::string_view line = detail::trim(raw);
    if (line.empty()) continue;
    if (line.starts_with("rows:")) {
      saw_rows = true;
      std::string_view body = detail::trim(line.substr(5));
      std::size_t start = 0;
      while (!body.empty() && start <= body.size()) {
        std::size_t end = body.find(',', start);
        if (end == std::string_view::npos) end = body.size();
        auto r = parse_index(body.substr(start, end - start));
        if (r && *r < window.height()) {
          rows.push_back(*r);
        } else {
          ++result.warnings;
        }
        start = end + 1;
      }
    } else if (line.starts_with("columns:")) {
      saw_cols = true;
      std::string_view body = line.substr(8);
      if (!body.empty() && body.front() == ' ') body.remove_prefix(1);
      if (body.empty()) continue;
      std::vector<bool> used(window.width(), false);
      for (const std::string& name : split_row(body)) {
        std::optional<std::size_t> match;
        for (std::size_t c = 0; c < window.width() && !match; ++c) {
          if (!used[c] && window.header(c) == name) match = c;
        }
        if (match) {
          used[*match] = true;
          cols.push_back(*match);
        } else {
          ++result.warnings;
        }
      }
    } else {
      ++result.warnings;
    }
  }
  if (!saw_rows) ++result.warnings;
  if (!saw_cols) ++result.warnings;

  for (std::size_t c : cols) result.selection.add_column(window.global_col(c));
  for (std::size_t r : rows) {
    for (std::size_t c : cols) result.selection.add_cell(window.global(r, c));
  }
  return result;
}

std::string encode_table(const Window& window, const CellSelection& selection) {
  const LocalSelection local = localize(window, selection);
  if (local.cols.empty()) return {};
  std::string out;
  for (std::size_t k = 0; k < local.cols.size(); ++k) {
    if (k > 0) out += " | ";
    append_escaped(out, window.header(local.cols[k]));
  }
  for (std::size_t r : local.rows) {
    out += '\n';
    for (std::size_t k = 0; k < local.cols.size(); ++k) {
      if (k > 0) out += " | ";
      append_escaped(out, window.cell(r, local.cols[k]));
    }
  }
  return out;
}

DecodeResult decode_table(std::string_view text, const Window& window) {
  DecodeResult result;
  std::vector<std::optional<std::size_t>> header_cols;
  bool have_header = false;

  for (std::string_view raw : detail::split_lines(text)) {
    if (detail::trim(raw).empty()) continue;
    std::vector<std::string> fields = split_row(raw);
    if (!have_header) {
      have_header = true;
      std::vector<bool> used(window.width(), false);
      for (const std::string& name : fields) {
        std::optional<std::size_t> match;
        for (std::size_t c = 0; c < window.width() && !match; ++c) {
          if (!used[c] && window.header(c) == name) match = c;
        }
        if (match) {
          used[*match] = true;
          result.selection.add_column(window.global_col(*match));
        } else {
          ++result.warnings;
        }
        header_cols.push_back(match);
      }
      continue;
    }
    if (fields.size() != header_cols.size()) ++result.warnings;
    for (std::size_t k = 0; k < fields.size() && k < header_cols.size(); ++k) {
      if (!header_cols[k]) continue;
      const std::size_t c = *header_cols[k];
      std::optional<std::size_t> match;
      std::size_t hits = 0;
      for (std::size_t r = 0; r < window.height(); ++r) {
        if (window.cell(r, c) == fields[k]) {
          if (!match) match = r;
          ++hits;
        }
      }
      if (!match) {
        ++result.warnings;
        continue;
      }
      if (hits > 1) ++result.ambiguities;
      result.selection.add_cell(window.global(*match, c));
    }
  }
  return result;
}

}  // namespace tabsel
