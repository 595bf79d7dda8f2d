#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rumourlens/classify.hpp"

namespace rumourlens {

// Attributions of the rumour-class probability.
struct ShapExplanation {
  double base_value = 0;    // mean model output over the background rows
  std::vector<double> phi;  // one per feature, model order
  double model_output = 0;

  double additivity_gap() const;  // |base + sum(phi) - output|
};

using Matrix = std::vector<std::vector<double>>;

// Interventional TreeSHAP: exact Shapley values of
// v(S) = mean_r f(x_S, r_rest) over the background rows, per tree, averaged.
// Throws FeatureMismatch, EmptySample.
ShapExplanation tree_shap(const RandomForest& model, std::span<const double> instance, const Matrix& background);

inline constexpr std::size_t kMaxBruteForceFeatures = 12;

// Direct evaluation of the Shapley formula over all 2^d coalitions.
// Throws TooManyFeatures when d > 12.
std::vector<double> brute_shapley(const RandomForest& model, std::span<const double> instance,
                                  const Matrix& background);

// Up to max_rows rows drawn without replacement (seeded), in original order.
Matrix select_background(const Dataset& data, std::size_t max_rows, std::uint64_t seed);

struct ShapPoint {
  std::string instance_id;
  std::size_t feature = 0;
  double value = 0;
  double phi = 0;
  bool above_median = false;  // value above the feature's median over the explained rows
};

struct ShapRank {
  std::string feature;
  double mean_abs_phi = 0;
  std::size_t rank = 0;  // 1-based
  int impact = 0;        // sign of corr(value, phi); 0 when undefined
};

struct ShapSummary {
  std::vector<std::string> feature_names;
  std::vector<std::string> instance_ids;
  std::vector<ShapExplanation> explanations;
  std::vector<ShapRank> ranking;  // descending mean |phi|, ties by name
  std::vector<ShapPoint> points;  // instance-major
};

ShapSummary shap_summary(const RandomForest& model, const Dataset& instances, const Matrix& background,
                         unsigned threads = 1);

inline constexpr std::string_view kShapCsvHeader = "model,instance_id,feature,value,phi,above_median";
std::string shap_points_csv(const ShapSummary& summary, std::string_view model_name);
std::string shap_ranking_json(const ShapSummary& summary, std::string_view model_name);

}  // namespace rumourlens
