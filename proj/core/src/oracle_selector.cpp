#include "tabsel/errors.hpp"
#include "tabsel/selector.hpp"

namespace tabsel {

CellSelection oracle_select(const Window& window, const Annotation& annotation) {
  const auto relevant = annotation.relevant_columns();

  std::vector<std::size_t> cols;  // window-local
  for (std::size_t c = 0; c < window.width(); ++c) {
    if (relevant.contains(window.global_col(c))) cols.push_back(c);
  }
  CellSelection out;
  if (cols.empty()) return out;
  for (std::size_t c : cols) out.add_column(window.global_col(c));

  struct Active {
    std::size_t local_col;
    const Condition* cond;
  };
  std::vector<Active> active;
  for (const auto& cond : annotation.conditions) {
    if (auto c = window.local_col(cond.column)) active.push_back({*c, &cond});
  }

  for (std::size_t r = 0; r < window.height(); ++r) {
    bool keep = true;
    for (const auto& a : active) {
      if (!condition_satisfied(window.cell(r, a.local_col), *a.cond)) {
        keep = false;
        break;
      }
    }
    if (!keep) continue;
    for (std::size_t c : cols) out.add_cell(window.global(r, c));
  }
  return out;
}

SelectorOutput OracleSelector::select(const Window& window, const Question& /*question*/,
                                      const Annotation* annotation) const {
  if (annotation == nullptr) throw InvalidArgument("the oracle selector needs an annotation");
  return {oracle_select(window, *annotation), 0};
}

}  // namespace tabsel
