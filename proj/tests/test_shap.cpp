#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "rumourlens/error.hpp"
#include "rumourlens/shap.hpp"
#include "rumourlens/util.hpp"
#include "support.hpp"

using namespace rumourlens;

namespace {

TreeNode leaf(double nr, double r) {
  TreeNode n;
  n.counts = {nr, r};
  return n;
}

TreeNode split(int feature, double threshold, int left, int right, double nr, double r) {
  TreeNode n;
  n.feature = feature;
  n.threshold = threshold;
  n.left = left;
  n.right = right;
  n.counts = {nr, r};
  return n;
}

RandomForest forest_of(std::size_t width, std::vector<DecisionTree> trees) {
  RandomForest m;
  for (std::size_t i = 0; i < width; ++i) m.feature_names.push_back("f" + std::to_string(i));
  m.trees = std::move(trees);
  return m;
}

// x_j <= 0.5 -> leaf value lo, else hi.
DecisionTree stump(int feature, double lo, double hi) {
  return DecisionTree{{split(feature, 0.5, 1, 2, 2 - lo - hi, lo + hi), leaf(1 - lo, lo), leaf(1 - hi, hi)}};
}

double sum(const std::vector<double>& xs) { return std::accumulate(xs.begin(), xs.end(), 0.0); }

}  // namespace

TEST(TreeShap, ConstantModel) {
  auto m = forest_of(3, {DecisionTree{{leaf(3, 1)}}});
  Matrix bg = {{0, 0, 0}, {1, 2, 3}};
  std::vector<double> x = {5, 5, 5};
  auto e = tree_shap(m, x, bg);
  EXPECT_EQ(e.base_value, 0.25);
  EXPECT_EQ(e.model_output, 0.25);
  for (double p : e.phi) EXPECT_EQ(p, 0.0);
}

TEST(TreeShap, StumpAttributesOnlyItsFeature) {
  auto m = forest_of(3, {stump(1, 0.0, 1.0)});
  Matrix bg = {{0, 0, 0}, {0, 1, 0}, {9, 0, 9}, {0, 0, 1}};
  std::vector<double> x = {0, 1, 0};
  auto e = tree_shap(m, x, bg);
  EXPECT_EQ(e.phi[0], 0.0);
  EXPECT_EQ(e.phi[2], 0.0);
  EXPECT_NEAR(e.phi[1], e.model_output - e.base_value, 1e-15);
  EXPECT_NEAR(e.phi[1], 0.75, 1e-15);
}

TEST(BruteShapley, SymmetricFeatures) {
  auto m = forest_of(2, {stump(0, 0, 1), stump(1, 0, 1)});
  Matrix bg = {{0, 0}, {1, 1}, {0, 1}, {1, 0}};
  std::vector<double> x = {1, 1};
  auto phi = brute_shapley(m, x, bg);
  EXPECT_NEAR(phi[0], phi[1], 1e-9);
  auto e = tree_shap(m, x, bg);
  EXPECT_NEAR(e.phi[0], phi[0], 1e-12);
}

TEST(BruteShapley, DummyFeatureIsExactlyZero) {
  auto m = forest_of(3, {stump(0, 0.2, 0.9), stump(2, 0.7, 0.1)});
  Matrix bg = {{0, 5, 1}, {1, -5, 0}, {0.3, 0, 0.9}};
  std::vector<double> x = {1, 100, 0};
  EXPECT_EQ(brute_shapley(m, x, bg)[1], 0.0);
  EXPECT_EQ(tree_shap(m, x, bg).phi[1], 0.0);
}

TEST(BruteShapley, TooManyFeatures) {
  auto m = forest_of(13, {DecisionTree{{leaf(1, 1)}}});
  std::vector<double> x(13, 0.0);
  try {
    brute_shapley(m, x, {x});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TooManyFeatures);
  }
}

TEST(TreeShap, Errors) {
  auto m = forest_of(2, {stump(0, 0, 1)});
  std::vector<double> x = {1, 1}, narrow = {1};
  try {
    tree_shap(m, narrow, {{0, 0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::FeatureMismatch);
  }
  try {
    tree_shap(m, x, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptySample);
  }
}

// Randomized forests over <= 4 features and <= 20 background rows.
TEST(TreeShap, MatchesBruteForceOnRandomForests) {
  Rng rng(123);
  std::size_t cases = 0, informative = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t d = 1 + rng.index(4);
    const std::size_t n = 12 + rng.index(30);
    Dataset data;
    for (std::size_t f = 0; f < d; ++f) data.feature_names.push_back("f" + std::to_string(f));
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> row(d);
      for (auto& v : row) v = static_cast<double>(rng.index(5));  // small integer grid forces ties
      double s = 0;
      for (double v : row) s += v;
      data.ids.push_back(std::to_string(i));
      data.x.push_back(row);
      data.y.push_back(s + static_cast<double>(rng.index(3)) > 2.0 * static_cast<double>(d) + 1 ? Label::Rumour
                                                                                              : Label::NonRumour);
    }
    if (data.class_counts()[0] == 0 || data.class_counts()[1] == 0) continue;
    ForestConfig cfg;
    cfg.n_trees = 1 + rng.index(5);
    cfg.max_depth = rng.index(5);
    cfg.bootstrap = rng.index(2) == 1;
    auto model = fit_forest(data, cfg, rng.next());
    auto bg = select_background(data, 1 + rng.index(20), rng.next());
    ASSERT_LE(bg.size(), 20u);
    for (std::size_t k = 0; k < 3; ++k) {
      std::vector<double> x(d);
      for (auto& v : x) v = static_cast<double>(rng.index(6)) - 0.5;
      auto e = tree_shap(model, x, bg);
      auto brute = brute_shapley(model, x, bg);
      for (std::size_t f = 0; f < d; ++f) ASSERT_NEAR(e.phi[f], brute[f], 1e-9) << "trial " << trial;
      ASSERT_LT(e.additivity_gap(), 1e-9);
      ASSERT_NEAR(sum(brute), e.model_output - e.base_value, 1e-9);
      for (double p : e.phi) informative += p != 0.0 ? 1 : 0;
    }
    ++cases;
  }
  EXPECT_GE(cases, 100u);
  EXPECT_GT(informative, 200u);
}

TEST(Background, SubsampleIsSeededAndOrdered) {
  Dataset d;
  d.feature_names = {"f"};
  for (int i = 0; i < 50; ++i) {
    d.ids.push_back(std::to_string(i));
    d.x.push_back({static_cast<double>(i)});
    d.y.push_back(Label::Rumour);
  }
  auto a = select_background(d, 10, 5), b = select_background(d, 10, 5);
  EXPECT_EQ(a, b);
  ASSERT_EQ(a.size(), 10u);
  for (std::size_t i = 1; i < a.size(); ++i) EXPECT_LT(a[i - 1][0], a[i][0]);
  EXPECT_EQ(select_background(d, 100, 5).size(), 50u);
}

TEST(Summary, SingleInstance) {
  auto m = forest_of(3, {stump(0, 0.1, 0.9), stump(2, 0.6, 0.2)});
  Dataset one;
  one.feature_names = m.feature_names;
  one.ids = {"only"};
  one.x = {{1, 0, 1}};
  one.y = {Label::Rumour};
  Matrix bg = {{0, 0, 0}, {1, 1, 1}, {0, 1, 0}};
  auto s = shap_summary(m, one, bg);
  auto e = tree_shap(m, one.x[0], bg);
  ASSERT_EQ(s.ranking.size(), 3u);
  for (const auto& r : s.ranking) {
    const auto f = static_cast<std::size_t>(r.feature[1] - '0');
    EXPECT_EQ(r.mean_abs_phi, std::abs(e.phi[f]));
  }
  EXPECT_EQ(s.ranking[0].feature, "f0");
  EXPECT_EQ(s.ranking[0].rank, 1u);
  EXPECT_EQ(s.ranking[2].feature, "f1");
  EXPECT_EQ(s.ranking[2].impact, 0);
  EXPECT_EQ(s.points.size(), 3u);
}

TEST(Summary, RankingImpactAndExports) {
  Dataset data;
  data.feature_names = {"a", "b"};
  for (int i = 0; i < 40; ++i) {
    data.ids.push_back("i" + std::to_string(i));
    data.x.push_back({static_cast<double>(i % 10), static_cast<double>((i * 7) % 5)});
    data.y.push_back(i % 10 >= 5 ? Label::Rumour : Label::NonRumour);
  }
  ForestConfig cfg;
  cfg.n_trees = 8;
  auto model = fit_forest(data, cfg, 3);
  auto s = shap_summary(model, data, select_background(data, 20, 1), 3);
  ASSERT_EQ(s.explanations.size(), 40u);
  for (const auto& e : s.explanations) EXPECT_LT(e.additivity_gap(), 1e-9);
  EXPECT_EQ(s.ranking[0].feature, "a");
  EXPECT_EQ(s.ranking[0].impact, 1);
  EXPECT_GE(s.ranking[0].mean_abs_phi, s.ranking[1].mean_abs_phi);
  auto csv = shap_points_csv(s, "m");
  EXPECT_EQ(csv.substr(0, kShapCsvHeader.size()), kShapCsvHeader);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 81);
  auto j = nlohmann::json::parse(shap_ranking_json(s, "m"));
  EXPECT_EQ(j["ranking"][0]["feature"], "a");
  EXPECT_EQ(j["ranking"][0]["impact"], "positive");
  EXPECT_EQ(j["ranking"][0]["rank"], 1);
  auto threaded = shap_summary(model, data, select_background(data, 20, 1), 1);
  EXPECT_EQ(shap_points_csv(threaded, "m"), csv);
}
