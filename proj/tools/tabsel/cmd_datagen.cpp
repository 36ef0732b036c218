#include <cstdint>
#include <fstream>
#include <memory>
#include <random>

#include "commands.hpp"
#include "tabsel/datagen.hpp"
#include "tabsel/representation.hpp"

namespace tabsel::cli {
namespace {

struct DatagenOptions {
  std::filesystem::path corpus;
  std::size_t window = 4;
  std::string balance = "uniform";
  std::size_t per_bucket = 0;  // 0: the smallest bucket's supply
  bool augment = false;
  std::uint64_t seed = 0;
  std::filesystem::path out;
  std::filesystem::path histogram_path;
  bool topup = false;
  std::filesystem::path template_path;
  bool lenient = false;
};

std::string bucket_name(const BucketKey& k) {
  return "(" + std::to_string(k.first) + "," + std::to_string(k.second) + ")";
}

void run(const DatagenOptions& o) {
  const std::vector<Example> examples = read_corpus(o.corpus, o.lenient);
  const PromptTemplate tpl =
      o.template_path.empty() ? PromptTemplate::builtin() : PromptTemplate::load(o.template_path);
  const WindowConfig wc = WindowConfig::square(o.window);

  std::vector<TrainingPair> pairs;
  for (const auto& ex : examples) {
    auto ps = generate_pairs(ex.table, ex.question, ex.annotation, wc, {ex.table_id, ex.question_id}, tpl);
    pairs.insert(pairs.end(), std::make_move_iterator(ps.begin()), std::make_move_iterator(ps.end()));
  }
  const std::size_t generated = pairs.size();
  pairs = drop_zero_column_pairs(std::move(pairs));
  std::cout << "generated " << generated << " pairs, dropped " << generated - pairs.size()
            << " with no target column\n";

  if (o.balance == "uniform") {
    Histogram supply = histogram(pairs);
    const BucketSpec probe = BucketSpec::uniform(o.window, 0);
    std::size_t per_bucket = o.per_bucket;
    if (per_bucket == 0) {
      // Smallest non-empty bucket; empty ones cannot be balanced without top-up.
      std::string empty;
      per_bucket = SIZE_MAX;
      for (const auto& [key, unused] : probe.counts()) {
        if (supply[key] == 0) {
          empty += " " + bucket_name(key);
        } else {
          per_bucket = std::min(per_bucket, supply[key]);
        }
      }
      if (per_bucket == SIZE_MAX) throw UsageError("no pairs fall in any (m,n) bucket");
      if (!empty.empty() && !o.topup) {
        std::cerr << "warning: empty bucket(s)" << empty << "; use --synthesize-topup to fill them\n";
      }
    }

    if (o.topup) {
      std::mt19937_64 rng(o.seed);
      std::size_t added = 0;
      for (const auto& [key, unused] : probe.counts()) {
        for (std::size_t have = supply[key]; have < per_bucket; ++have, ++added) {
          SyntheticExample syn = synthesize_example(key.first, key.second, o.window, rng);
          const std::string id = "synthetic-" + std::to_string(added);
          auto ps = generate_pairs(syn.table, Question(syn.question), syn.annotation, wc, {id, id}, tpl);
          pairs.insert(pairs.end(), ps.begin(), ps.end());
        }
      }
      if (added > 0) std::cout << "synthesized " << added << " pairs for short buckets\n";
    }

    BalanceResult balanced = balance_pairs(pairs, BucketSpec::uniform(o.window, per_bucket), o.seed);
    for (const auto& [key, unused] : probe.counts()) {
      auto it = balanced.histogram.find(key);
      const std::size_t got = it == balanced.histogram.end() ? 0 : it->second;
      if (got < per_bucket) {
        std::cerr << "warning: bucket " << bucket_name(key) << " has " << got << " of " << per_bucket << " pairs\n";
      }
    }
    pairs = std::move(balanced.pairs);
    std::cout << "balanced to " << per_bucket << " pairs per bucket over " << probe.counts().size()
              << " buckets\n";
  }

  if (o.augment) {
    AugmentResult aug = augment_same_value(std::move(pairs));
    std::cout << "augmented " << aug.changed << " of " << aug.pairs.size() << " pairs ("
              << aug.changed_fraction() * 100.0 << "%)\n";
    pairs = std::move(aug.pairs);
  }

  std::ofstream out(o.out, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + o.out.string());
  for (const auto& p : pairs) out << serialize_pair(p) << '\n';

  const std::filesystem::path hist_path =
      o.histogram_path.empty() ? std::filesystem::path(o.out.string() + ".histogram.json") : o.histogram_path;
  Histogram hist = histogram(pairs);
  if (o.balance == "uniform") {
    const BucketSpec all = BucketSpec::uniform(o.window, 0);
    for (const auto& [key, unused] : all.counts()) hist.try_emplace(key, 0);
  }
  write_text(hist_path, serialize_histogram(hist) + "\n");
  std::cout << "wrote " << pairs.size() << " pairs to " << o.out.string() << ", histogram to "
            << hist_path.string() << '\n';
}

}  // namespace

void add_datagen(CLI::App& app) {
  auto o = std::make_shared<DatagenOptions>();
  CLI::App* cmd = app.add_subcommand("datagen", "Build selector training pairs from an annotated corpus");
  cmd->add_option("corpus,--corpus", o->corpus, "JSON-lines corpus")->required()->check(CLI::ExistingFile);
  cmd->add_option("--window", o->window, "Window size")->check(CLI::Range(1, 64))->capture_default_str();
  cmd->add_option("--balance", o->balance, "Bucket balancing")
      ->check(CLI::IsMember({"uniform", "none"}))
      ->capture_default_str();
  cmd->add_option("--per-bucket", o->per_bucket, "Pairs per (m,n) bucket; default is the smallest bucket");
  cmd->add_flag("--augment", o->augment, "Add same-value cells to targets");
  cmd->add_option("--seed", o->seed, "Sampling seed")->capture_default_str();
  cmd->add_option("-o,--out", o->out, "Output pairs, JSON lines")->required();
  cmd->add_option("--histogram", o->histogram_path, "Histogram file (default: <out>.histogram.json)");
  cmd->add_flag("--synthesize-topup", o->topup, "Fill short buckets with synthetic windows");
  cmd->add_option("--template", o->template_path, "Prompt template file")->check(CLI::ExistingFile);
  cmd->add_flag("--lenient", o->lenient, "Skip malformed corpus lines instead of failing");
  cmd->callback([o] { run(*o); });
}

}  // namespace tabsel::cli
