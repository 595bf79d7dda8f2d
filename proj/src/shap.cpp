#include "rumourlens/shap.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include <json.hpp>

#include "rumourlens/error.hpp"
#include "rumourlens/util.hpp"

namespace rumourlens {

double ShapExplanation::additivity_gap() const {
  double s = base_value;
  for (double p : phi) s += p;
  return std::abs(s - model_output);
}

namespace {

void check_inputs(const RandomForest& model, std::span<const double> instance, const Matrix& background) {
  const auto d = model.feature_names.size();
  if (instance.size() != d)
    throw Error(ErrorKind::FeatureMismatch,
                "instance has " + std::to_string(instance.size()) + " features, model expects " + std::to_string(d));
  if (background.empty()) throw Error(ErrorKind::EmptySample, "background set is empty");
  for (const auto& r : background)
    if (r.size() != d) throw Error(ErrorKind::FeatureMismatch, "background row width differs from model");
}

// w[a][b]: Shapley weight of a player in the a-set (size a >= 1) of the
// game 1[A subset of S, B disjoint from S] with |B| = b, i.e.
// (a-1)! b! / (a+b)!. The B-side weight is w[b][a] with the sign flipped.
class WeightTable {
 public:
  explicit WeightTable(std::size_t d) : d_(d), w_((d + 1) * (d + 1), 0.0) {
    for (std::size_t a = 1; a <= d; ++a)
      for (std::size_t b = 0; a + b <= d; ++b) {
        // (a-1)! b! / (a+b)! = 1 / ((a+b) * C(a+b-1, b))
        double binom = 1;
        for (std::size_t i = 1; i <= b; ++i) binom = binom * static_cast<double>(a - 1 + i) / static_cast<double>(i);
        w_[a * (d + 1) + b] = 1.0 / (static_cast<double>(a + b) * binom);
      }
  }
  double operator()(std::size_t a, std::size_t b) const { return w_[a * (d_ + 1) + b]; }

 private:
  std::size_t d_;
  std::vector<double> w_;
};

enum : unsigned char { kFree = 0, kFromX = 1, kFromR = 2 };

struct TreeWalker {
  const DecisionTree& tree;
  std::span<const double> x;
  std::span<const double> r;
  const WeightTable& weights;
  std::vector<unsigned char>& state;
  std::vector<std::size_t>& a_set;
  std::vector<std::size_t>& b_set;
  std::vector<double>& phi;

  void walk(std::size_t n) {
    const auto& node = tree.nodes[n];
    if (node.is_leaf()) {
      const double v = node.rumour_fraction();
      const auto a = a_set.size(), b = b_set.size();
      if (a > 0) {
        const double w = v * weights(a, b);
        for (auto j : a_set) phi[j] += w;
      }
      if (b > 0) {
        const double w = v * weights(b, a);
        for (auto j : b_set) phi[j] -= w;
      }
      return;
    }
    const auto f = static_cast<std::size_t>(node.feature);
    const auto go = [&](double v) {
      return static_cast<std::size_t>(v <= node.threshold ? node.left : node.right);
    };
    const auto nx = go(x[f]), nr = go(r[f]);
    if (nx == nr) return walk(nx);
    if (state[f] == kFromX) return walk(nx);
    if (state[f] == kFromR) return walk(nr);
    state[f] = kFromX;
    a_set.push_back(f);
    walk(nx);
    a_set.pop_back();
    state[f] = kFromR;
    b_set.push_back(f);
    walk(nr);
    b_set.pop_back();
    state[f] = kFree;
  }
};

}  // namespace

ShapExplanation tree_shap(const RandomForest& model, std::span<const double> instance, const Matrix& background) {
  check_inputs(model, instance, background);
  const auto d = model.feature_names.size();
  const WeightTable weights(d);
  ShapExplanation e;
  e.phi.assign(d, 0.0);
  std::vector<unsigned char> state(d, kFree);
  std::vector<std::size_t> a_set, b_set;
  for (const auto& tree : model.trees)
    for (const auto& row : background) {
      TreeWalker{tree, instance, row, weights, state, a_set, b_set, e.phi}.walk(0);
    }
  const double scale = 1.0 / static_cast<double>(model.trees.size() * background.size());
  for (auto& p : e.phi) p *= scale;
  double base = 0;
  for (const auto& row : background) base += model.predict_proba(row);
  e.base_value = base / static_cast<double>(background.size());
  e.model_output = model.predict_proba(instance);
  return e;
}

std::vector<double> brute_shapley(const RandomForest& model, std::span<const double> instance,
                                  const Matrix& background) {
  check_inputs(model, instance, background);
  const auto d = model.feature_names.size();
  if (d > kMaxBruteForceFeatures)
    throw Error(ErrorKind::TooManyFeatures, std::to_string(d) + " features exceed the brute-force limit of 12");
  const std::size_t masks = std::size_t{1} << d;
  std::vector<double> v(masks, 0.0);
  std::vector<double> z(d);
  for (std::size_t s = 0; s < masks; ++s) {
    double sum = 0;
    for (const auto& row : background) {
      for (std::size_t j = 0; j < d; ++j) z[j] = (s >> j & 1) ? instance[j] : row[j];
      sum += model.predict_proba(z);
    }
    v[s] = sum / static_cast<double>(background.size());
  }
  std::vector<double> fact(d + 1, 1.0);
  for (std::size_t i = 1; i <= d; ++i) fact[i] = fact[i - 1] * static_cast<double>(i);
  std::vector<double> phi(d, 0.0);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t s = 0; s < masks; ++s) {
      if (s >> j & 1) continue;
      const auto size = static_cast<std::size_t>(std::popcount(s));
      const double w = fact[size] * fact[d - size - 1] / fact[d];
      phi[j] += w * (v[s | (std::size_t{1} << j)] - v[s]);
    }
  return phi;
}

Matrix select_background(const Dataset& data, std::size_t max_rows, std::uint64_t seed) {
  std::vector<std::size_t> idx(data.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  if (max_rows > 0 && idx.size() > max_rows) {
    Rng rng(seed);
    rng.shuffle(idx);
    idx.resize(max_rows);
    std::sort(idx.begin(), idx.end());
  }
  Matrix out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(data.x[i]);
  return out;
}

ShapSummary shap_summary(const RandomForest& model, const Dataset& instances, const Matrix& background,
                         unsigned threads) {
  if (instances.size() == 0) throw Error(ErrorKind::EmptySample, "no instances to explain");
  const auto d = model.feature_names.size();
  ShapSummary s;
  s.feature_names = model.feature_names;
  s.instance_ids = instances.ids;
  s.explanations.resize(instances.size());
  parallel_for(instances.size(), threads,
               [&](std::size_t i) { s.explanations[i] = tree_shap(model, instances.x[i], background); });

  std::vector<double> medians(d);
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<double> col;
    for (const auto& x : instances.x) col.push_back(x[j]);
    medians[j] = median(std::move(col));
  }
  const double n = static_cast<double>(instances.size());
  for (std::size_t j = 0; j < d; ++j) {
    double abs_sum = 0, mv = 0, mp = 0;
    for (std::size_t i = 0; i < instances.size(); ++i) {
      abs_sum += std::abs(s.explanations[i].phi[j]);
      mv += instances.x[i][j];
      mp += s.explanations[i].phi[j];
    }
    mv /= n;
    mp /= n;
    double cov = 0, vv = 0, vp = 0;
    for (std::size_t i = 0; i < instances.size(); ++i) {
      const double dv = instances.x[i][j] - mv, dp = s.explanations[i].phi[j] - mp;
      cov += dv * dp;
      vv += dv * dv;
      vp += dp * dp;
    }
    int impact = 0;
    if (vv > 0 && vp > 0 && std::abs(cov) > 1e-12 * std::sqrt(vv * vp)) impact = cov > 0 ? 1 : -1;
    s.ranking.push_back(ShapRank{model.feature_names[j], abs_sum / n, 0, impact});
  }
  std::stable_sort(s.ranking.begin(), s.ranking.end(), [](const ShapRank& a, const ShapRank& b) {
    if (a.mean_abs_phi != b.mean_abs_phi) return a.mean_abs_phi > b.mean_abs_phi;
    return a.feature < b.feature;
  });
  for (std::size_t k = 0; k < s.ranking.size(); ++k) s.ranking[k].rank = k + 1;

  for (std::size_t i = 0; i < instances.size(); ++i)
    for (std::size_t j = 0; j < d; ++j)
      s.points.push_back(ShapPoint{instances.ids[i], j, instances.x[i][j], s.explanations[i].phi[j],
                                   instances.x[i][j] > medians[j]});
  return s;
}

std::string shap_points_csv(const ShapSummary& summary, std::string_view model_name) {
  std::string out(kShapCsvHeader);
  out += '\n';
  for (const auto& p : summary.points)
    out += csv_row({std::string(model_name), p.instance_id, summary.feature_names[p.feature], format_double(p.value),
                    format_double(p.phi), p.above_median ? "1" : "0"});
  return out;
}

std::string shap_ranking_json(const ShapSummary& summary, std::string_view model_name) {
  nlohmann::json j;
  j["model"] = model_name;
  j["instances"] = summary.instance_ids.size();
  double base = 0;
  for (const auto& e : summary.explanations) base += e.base_value;
  j["base_value"] = summary.explanations.empty() ? 0.0 : base / static_cast<double>(summary.explanations.size());
  j["ranking"] = nlohmann::json::array();
  for (const auto& r : summary.ranking)
    j["ranking"].push_back({{"feature", r.feature},
                            {"mean_abs_phi", r.mean_abs_phi},
                            {"rank", r.rank},
                            {"impact", r.impact > 0 ? "positive" : r.impact < 0 ? "negative" : "none"}});
  return j.dump(1) + "\n";
}

}  // namespace rumourlens
