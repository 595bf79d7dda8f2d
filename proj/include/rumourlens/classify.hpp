#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rumourlens/corpus.hpp"
#include "rumourlens/features.hpp"

namespace rumourlens {

// Dense, fully imputed training data.
struct Dataset {
  std::vector<std::string> feature_names;
  std::vector<std::string> ids;
  std::vector<std::vector<double>> x;
  std::vector<Label> y;

  std::size_t size() const { return y.size(); }
  std::size_t width() const { return feature_names.size(); }
  std::array<std::size_t, 2> class_counts() const;
  Dataset subset(std::span<const std::size_t> rows) const;
};

// Per-feature median of the defined training values (0 when a feature is
// never defined).
struct Imputer {
  std::vector<double> medians;

  static Imputer fit(std::span<const FeatureRow> rows, std::size_t width);
  Dataset transform(const std::vector<std::string>& names, std::span<const FeatureRow> rows) const;
};

struct SplitIndices {
  std::vector<std::size_t> train;  // ascending
  std::vector<std::size_t> test;   // ascending
};

// Stratified: each class contributes max(1, round((1 - ratio) * n)) rows
// to test. Throws TooFewSamples when a class has fewer than two rows.
SplitIndices split_train_test(std::span<const Label> labels, double ratio, std::uint64_t seed);

// Duplicates minority rows (sampled with replacement) until both classes
// have equal counts. Copies keep their id. Throws SingleClass.
Dataset oversample(const Dataset& train, std::uint64_t seed);

struct ForestConfig {
  std::size_t n_trees = 100;
  std::size_t min_samples_split = 2;
  std::size_t max_depth = 0;                // 0 = unlimited
  std::optional<std::size_t> max_features;  // default ceil(sqrt(d))
  bool bootstrap = true;

  bool operator==(const ForestConfig&) const = default;
};

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0;
  int left = -1;     // x[feature] <= threshold
  int right = -1;
  std::array<double, 2> counts{};  // training rows per class reaching the node

  bool is_leaf() const { return feature < 0; }
  double rumour_fraction() const { return counts[1] / (counts[0] + counts[1]); }
  bool operator==(const TreeNode&) const = default;
};

struct DecisionTree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  std::size_t leaf_index(std::span<const double> x) const;
  double predict_proba(std::span<const double> x) const { return nodes[leaf_index(x)].rumour_fraction(); }
  bool operator==(const DecisionTree&) const = default;
};

DecisionTree fit_tree(const Dataset& data, std::span<const std::size_t> rows, const ForestConfig& config,
                      std::uint64_t seed);

struct Confusion {
  std::array<std::array<std::size_t, 2>, 2> m{};  // [actual][predicted]
  std::size_t total() const { return m[0][0] + m[0][1] + m[1][0] + m[1][1]; }
};

enum class Averaging { Weighted, Macro, Binary };
std::string_view to_string(Averaging a);
Averaging parse_averaging(std::string_view s);

struct Metrics {
  double accuracy = 0;
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  Confusion confusion;
};

// Per-class scores with zero denominators counted as 0; Binary reports the
// Rumour class.
Metrics metrics_from_confusion(const Confusion& c, Averaging averaging);

struct RandomForest {
  std::vector<std::string> feature_names;
  std::vector<double> medians;  // imputation values from the training split; empty when fitted on dense data
  ForestConfig config;
  std::uint64_t seed = 0;
  std::vector<DecisionTree> trees;
  std::vector<Metrics> fold_scores;

  // Mean leaf rumour fraction. Throws FeatureMismatch.
  double predict_proba(std::span<const double> x) const;
  // Rumour only when the mean probability is strictly above one half.
  Label predict(std::span<const double> x) const;

  std::string to_json() const;
  static RandomForest from_json(std::string_view text);
};

RandomForest fit_forest(const Dataset& train, const ForestConfig& config, std::uint64_t seed, unsigned threads = 1);

Metrics evaluate(const RandomForest& model, const Dataset& test, Averaging averaging);

// Stratified round-robin fold assignment. k is lowered to the minority
// class size (with a warning) when needed. Throws TooFewSamples.
std::vector<std::vector<std::size_t>> make_cv_folds(std::span<const Label> labels, std::size_t k,
                                                    std::uint64_t seed);

struct FoldRecord {
  std::vector<std::string> train_ids;  // multiset after oversampling
  std::vector<std::string> test_ids;
};

struct CvResult {
  std::vector<Metrics> folds;
  std::vector<FoldRecord> records;
  double mean_accuracy = 0;
  double std_accuracy = 0;
};

// Imputation and oversampling are fitted inside each fold's training part
// only; every FoldRecord is kept for leakage audits.
CvResult cross_validate(const std::vector<std::string>& names, std::span<const FeatureRow> rows, std::size_t k,
                        const ForestConfig& config, Averaging averaging, std::uint64_t seed, unsigned threads = 1);

// True when no test id appears in the training multiset.
bool disjoint_ids(const FoldRecord& record);

}  // namespace rumourlens
