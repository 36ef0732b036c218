#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tabsel/condition.hpp"
#include "tabsel/representation.hpp"
#include "tabsel/table.hpp"
#include "tabsel/windowing.hpp"

namespace tabsel {

// (m, n): rows and columns of a target subwindow.
using BucketKey = std::pair<std::size_t, std::size_t>;
using Histogram = std::map<BucketKey, std::size_t>;

// One selector training example: the rendered prompt for a window and the
// coordinate-grid target for it.
struct TrainingPair {
  std::string prompt;
  std::string target;
  std::size_t m = 0;  // rows owning a target cell
  std::size_t n = 0;  // target columns
  std::string table_id;
  std::string question_id;
  std::size_t origin_row = 0;  // global id of the window's first row
  std::size_t origin_col = 0;  // global id of the window's first column
  Table window;                // window contents, with global ids
  CellSelection selection;     // target as global coordinates
  bool augmented = false;

  BucketKey bucket() const { return {m, n}; }
};

struct PairSource {
  std::string table_id;
  std::string question_id;
};

// One pair per window of `table`; each target is oracle_select on that window.
// Zero-column targets are kept here (n == 0); see drop_zero_column_pairs.
std::vector<TrainingPair> generate_pairs(const Table& table, const Question& question,
                                         const Annotation& annotation, const WindowConfig& window,
                                         const PairSource& source = {},
                                         const PromptTemplate& tpl = PromptTemplate::builtin());

// Removes pairs whose target has no column; a subtable needs one.
std::vector<TrainingPair> drop_zero_column_pairs(std::vector<TrainingPair> pairs);

// Desired number of pairs per (m, n) bucket, keyed over {0..w} x {1..w}.
class BucketSpec {
 public:
  // Throws InvalidArgument unless the keys are exactly {0..w} x {1..w}.
  BucketSpec(std::size_t w, std::map<BucketKey, std::size_t> counts);

  static BucketSpec uniform(std::size_t w, std::size_t per_bucket);

  std::size_t window_size() const noexcept { return w_; }
  const std::map<BucketKey, std::size_t>& counts() const noexcept { return counts_; }

 private:
  std::size_t w_;
  std::map<BucketKey, std::size_t> counts_;
};

Histogram histogram(const std::vector<TrainingPair>& pairs);

struct BalanceResult {
  std::vector<TrainingPair> pairs;
  Histogram histogram;
};

// Draws, without replacement, up to the requested count from each bucket.
// Pairs outside the spec's buckets are discarded. Output keeps input order.
// Throws InvalidArgument on empty input.
BalanceResult balance_pairs(const std::vector<TrainingPair>& pairs, const BucketSpec& spec,
                            std::uint64_t seed);

struct AugmentResult {
  std::vector<TrainingPair> pairs;
  std::size_t changed = 0;

  double changed_fraction() const {
    return pairs.empty() ? 0.0 : static_cast<double>(changed) / static_cast<double>(pairs.size());
  }
};

// Adds every window cell whose value equals (under values_equal) the value of
// some target cell. Targets only grow. Changed pairs get `augmented` set and
// their target text and (m, n) recomputed.
AugmentResult augment_same_value(std::vector<TrainingPair> pairs);

// A synthetic w x w example whose only window has an oracle target of exactly
// m rows and n columns (0 <= m <= w, 1 <= n <= w).
struct SyntheticExample {
  Table table;
  std::string question;
  Annotation annotation;
};

SyntheticExample synthesize_example(std::size_t m, std::size_t n, std::size_t w,
                                    std::mt19937_64& rng);

}  // namespace tabsel
