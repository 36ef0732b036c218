#include "tabsel/datagen.hpp"

#include <algorithm>
#include <numeric>

#include "tabsel/errors.hpp"
#include "tabsel/selector.hpp"

namespace tabsel {
namespace {

void refresh_target(TrainingPair& pair) {
  const Window whole = Window::whole(pair.window);
  pair.target = encode_coordinate(whole, pair.selection);
  pair.m = pair.selection.rows().size();
  pair.n = pair.selection.columns().size();
}

}  // namespace

std::vector<TrainingPair> generate_pairs(const Table& table, const Question& question,
                                         const Annotation& annotation, const WindowConfig& window,
                                         const PairSource& source, const PromptTemplate& tpl) {
  std::vector<TrainingPair> pairs;
  for (const Window& w : divide_table(table, window)) {
    TrainingPair pair;
    pair.prompt = render_prompt(w, question.text(), tpl);
    pair.table_id = source.table_id;
    pair.question_id = source.question_id;
    pair.origin_row = w.global_row(0);
    pair.origin_col = w.global_col(0);
    pair.window = w.to_table();
    pair.selection = oracle_select(w, annotation);
    refresh_target(pair);
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

std::vector<TrainingPair> drop_zero_column_pairs(std::vector<TrainingPair> pairs) {
  std::erase_if(pairs, [](const TrainingPair& p) { return p.n == 0; });
  return pairs;
}

BucketSpec::BucketSpec(std::size_t w, std::map<BucketKey, std::size_t> counts)
    : w_(w), counts_(std::move(counts)) {
  if (w_ == 0) throw InvalidArgument("window size must be at least 1");
  if (counts_.size() != w_ * (w_ + 1)) {
    throw InvalidArgument("bucket spec must have exactly w*(w+1) = " +
                          std::to_string(w_ * (w_ + 1)) + " buckets");
  }
  for (const auto& [key, count] : counts_) {
    if (key.first > w_ || key.second < 1 || key.second > w_) {
      throw InvalidArgument("bucket (" + std::to_string(key.first) + "," +
                            std::to_string(key.second) + ") is outside {0..w} x {1..w}");
    }
  }
}

BucketSpec BucketSpec::uniform(std::size_t w, std::size_t per_bucket) {
  std::map<BucketKey, std::size_t> counts;
  for (std::size_t m = 0; m <= w; ++m) {
    for (std::size_t n = 1; n <= w; ++n) counts[{m, n}] = per_bucket;
  }
  return BucketSpec(w, std::move(counts));
}

Histogram histogram(const std::vector<TrainingPair>& pairs) {
  Histogram h;
  for (const auto& p : pairs) ++h[p.bucket()];
  return h;
}

BalanceResult balance_pairs(const std::vector<TrainingPair>& pairs, const BucketSpec& spec,
                            std::uint64_t seed) {
  if (pairs.empty()) throw InvalidArgument("cannot balance an empty pair set");

  std::map<BucketKey, std::vector<std::size_t>> by_bucket;
  for (std::size_t i = 0; i < pairs.size(); ++i) by_bucket[pairs[i].bucket()].push_back(i);

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> chosen;
  BalanceResult result;
  for (const auto& [key, want] : spec.counts()) {
    result.histogram[key] = 0;
    auto it = by_bucket.find(key);
    if (it == by_bucket.end()) continue;
    std::vector<std::size_t>& members = it->second;
    const std::size_t take = std::min(want, members.size());
    // Partial Fisher-Yates: the first `take` slots become a uniform sample.
    for (std::size_t k = 0; k < take; ++k) {
      std::uniform_int_distribution<std::size_t> pick(k, members.size() - 1);
      std::swap(members[k], members[pick(rng)]);
    }
    chosen.insert(chosen.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(take));
    result.histogram[key] = take;
  }
  std::sort(chosen.begin(), chosen.end());
  result.pairs.reserve(chosen.size());
  for (std::size_t i : chosen) result.pairs.push_back(pairs[i]);
  return result;
}

AugmentResult augment_same_value(std::vector<TrainingPair> pairs) {
  AugmentResult result;
  for (auto& pair : pairs) {
    const Table& win = pair.window;
    std::vector<std::string> targets;
    for (const auto& cell : pair.selection.cells()) {
      targets.push_back(win.cell(*win.local_row(cell.row), *win.local_col(cell.col)));
    }
    if (targets.empty()) continue;

    bool changed = false;
    for (std::size_t r = 0; r < win.rows(); ++r) {
      for (std::size_t c = 0; c < win.cols(); ++c) {
        const CellCoord coord{win.row_ids()[r], win.col_ids()[c]};
        if (pair.selection.cells().contains(coord)) continue;
        const std::string& value = win.cell(r, c);
        bool match = std::any_of(targets.begin(), targets.end(),
                                 [&](const std::string& t) { return values_equal(value, t); });
        if (match) {
          pair.selection.add_cell(coord);
          changed = true;
        }
      }
    }
    if (changed) {
      pair.augmented = true;
      refresh_target(pair);
      ++result.changed;
    }
  }
  result.pairs = std::move(pairs);
  return result;
}

SyntheticExample synthesize_example(std::size_t m, std::size_t n, std::size_t w,
                                    std::mt19937_64& rng) {
  if (w == 0 || n < 1 || n > w || m > w) {
    throw InvalidArgument("synthetic bucket must satisfy 0 <= m <= w and 1 <= n <= w");
  }
  std::vector<std::size_t> col_order(w);
  std::iota(col_order.begin(), col_order.end(), 0);
  std::shuffle(col_order.begin(), col_order.end(), rng);
  std::vector<std::size_t> relevant(col_order.begin(), col_order.begin() + static_cast<std::ptrdiff_t>(n));
  std::sort(relevant.begin(), relevant.end());

  // The last relevant column holds the answer. With n == 1 it is also the
  // condition column, unless every row is wanted, in which case no condition
  // is needed.
  SyntheticExample ex;
  ex.annotation.answer_columns.insert(relevant.back());
  std::vector<std::size_t> cond_cols(relevant.begin(), relevant.end() - 1);
  if (n == 1 && m < w) cond_cols.push_back(relevant.back());

  std::vector<std::size_t> row_order(w);
  std::iota(row_order.begin(), row_order.end(), 0);
  std::shuffle(row_order.begin(), row_order.end(), rng);
  std::vector<bool> satisfying(w, false);
  for (std::size_t k = 0; k < m; ++k) satisfying[row_order[k]] = true;

  std::vector<std::string> headers;
  for (std::size_t c = 0; c < w; ++c) headers.push_back("col" + std::to_string(c));

  std::uniform_int_distribution<int> noise(0, 999);
  std::vector<std::vector<std::string>> cells(w, std::vector<std::string>(w));
  for (std::size_t r = 0; r < w; ++r) {
    for (std::size_t c = 0; c < w; ++c) cells[r][c] = "x" + std::to_string(noise(rng));
  }
  for (std::size_t c : cond_cols) {
    const std::string value = "match" + std::to_string(c);
    ex.annotation.conditions.push_back({c, Op::kEquals, value});
    for (std::size_t r = 0; r < w; ++r) {
      if (satisfying[r]) cells[r][c] = value;
    }
  }
  // A failing row must miss at least one condition; the noise values above
  // never equal "match*", so every failing row already misses all of them.
  ex.table = Table::from_rows(std::move(headers), std::move(cells));
  ex.question = "Which col" + std::to_string(relevant.back()) + " values match?";
  return ex;
}

}  // namespace tabsel
