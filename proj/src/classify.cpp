#include "rumourlens/classify.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

#include "rumourlens/error.hpp"
#include "rumourlens/util.hpp"

using nlohmann::json;

namespace rumourlens {

std::array<std::size_t, 2> Dataset::class_counts() const {
  std::array<std::size_t, 2> c{};
  for (auto l : y) ++c[static_cast<std::size_t>(l)];
  return c;
}

Dataset Dataset::subset(std::span<const std::size_t> rows) const {
  Dataset d;
  d.feature_names = feature_names;
  for (auto r : rows) {
    d.ids.push_back(ids[r]);
    d.x.push_back(x[r]);
    d.y.push_back(y[r]);
  }
  return d;
}

Imputer Imputer::fit(std::span<const FeatureRow> rows, std::size_t width) {
  Imputer imp;
  imp.medians.assign(width, 0.0);
  for (std::size_t f = 0; f < width; ++f) {
    std::vector<double> xs;
    for (const auto& r : rows)
      if (r.values.at(f)) xs.push_back(*r.values[f]);
    if (!xs.empty()) imp.medians[f] = median(std::move(xs));
  }
  return imp;
}

Dataset Imputer::transform(const std::vector<std::string>& names, std::span<const FeatureRow> rows) const {
  if (names.size() != medians.size()) throw Error(ErrorKind::FeatureMismatch, "imputer width differs from schema");
  Dataset d;
  d.feature_names = names;
  for (const auto& r : rows) {
    if (r.values.size() != medians.size())
      throw Error(ErrorKind::FeatureMismatch, "row " + r.id + " has " + std::to_string(r.values.size()) + " values");
    std::vector<double> x(medians.size());
    for (std::size_t f = 0; f < x.size(); ++f) x[f] = r.values[f].value_or(medians[f]);
    d.ids.push_back(r.id);
    d.x.push_back(std::move(x));
    d.y.push_back(r.label);
  }
  return d;
}

namespace {

std::array<std::vector<std::size_t>, 2> by_class(std::span<const Label> labels) {
  std::array<std::vector<std::size_t>, 2> idx;
  for (std::size_t i = 0; i < labels.size(); ++i) idx[static_cast<std::size_t>(labels[i])].push_back(i);
  return idx;
}

}  // namespace

SplitIndices split_train_test(std::span<const Label> labels, double ratio, std::uint64_t seed) {
  if (!(ratio > 0 && ratio < 1)) throw Error(ErrorKind::ConfigError, "split ratio must be in (0, 1)");
  auto classes = by_class(labels);
  SplitIndices s;
  for (std::size_t c = 0; c < 2; ++c) {
    auto& idx = classes[c];
    if (idx.size() < 2)
      throw Error(ErrorKind::TooFewSamples, "class " + std::string(to_string(static_cast<Label>(c))) + " has " +
                                                std::to_string(idx.size()) + " samples; need at least 2");
    Rng rng(derive_seed(seed, c));
    rng.shuffle(idx);
    const auto n = idx.size();
    auto n_test = static_cast<std::size_t>(std::llround((1.0 - ratio) * static_cast<double>(n)));
    n_test = std::clamp<std::size_t>(n_test, 1, n - 1);
    s.test.insert(s.test.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_test));
    s.train.insert(s.train.end(), idx.begin() + static_cast<std::ptrdiff_t>(n_test), idx.end());
  }
  std::sort(s.train.begin(), s.train.end());
  std::sort(s.test.begin(), s.test.end());
  return s;
}

Dataset oversample(const Dataset& train, std::uint64_t seed) {
  const auto counts = train.class_counts();
  if (counts[0] == 0 || counts[1] == 0) throw Error(ErrorKind::SingleClass, "oversampling needs both classes");
  Dataset out = train;
  if (counts[0] == counts[1]) return out;
  const auto minority = static_cast<Label>(counts[0] < counts[1] ? 0 : 1);
  std::vector<std::size_t> pool;
  for (std::size_t i = 0; i < train.size(); ++i)
    if (train.y[i] == minority) pool.push_back(i);
  const std::size_t extra = std::max(counts[0], counts[1]) - std::min(counts[0], counts[1]);
  Rng rng(seed);
  for (std::size_t k = 0; k < extra; ++k) {
    const auto r = pool[rng.index(pool.size())];
    out.ids.push_back(train.ids[r]);
    out.x.push_back(train.x[r]);
    out.y.push_back(train.y[r]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// trees

std::size_t DecisionTree::leaf_index(std::span<const double> x) const {
  std::size_t n = 0;
  while (!nodes[n].is_leaf()) {
    const auto& node = nodes[n];
    n = static_cast<std::size_t>(x[static_cast<std::size_t>(node.feature)] <= node.threshold ? node.left : node.right);
  }
  return n;
}

namespace {

struct TreeBuilder {
  const Dataset& data;
  const ForestConfig& config;
  std::size_t max_features;
  Rng rng;
  DecisionTree tree;

  struct Split {
    int feature = -1;
    double threshold = 0;
    double score = -1;  // sum over children of (n0^2 + n1^2) / n
  };

  Split best_split(const std::vector<std::size_t>& rows) {
    std::vector<std::size_t> order(data.width());
    for (std::size_t f = 0; f < order.size(); ++f) order[f] = f;
    rng.shuffle(order);

    std::array<double, 2> total{};
    for (auto r : rows) total[static_cast<std::size_t>(data.y[r])] += 1;
    const double n = static_cast<double>(rows.size());

    Split best;
    std::size_t usable = 0;
    std::vector<std::pair<double, std::size_t>> col(rows.size());
    for (auto f : order) {
      if (usable >= max_features) break;
      for (std::size_t i = 0; i < rows.size(); ++i)
        col[i] = {data.x[rows[i]][f], static_cast<std::size_t>(data.y[rows[i]])};
      std::sort(col.begin(), col.end());
      if (col.front().first == col.back().first) continue;
      ++usable;
      std::array<double, 2> left{};
      for (std::size_t i = 0; i + 1 < col.size(); ++i) {
        left[col[i].second] += 1;
        if (col[i].first == col[i + 1].first) continue;
        const double nl = static_cast<double>(i + 1);
        const double nr = n - nl;
        const double r0 = total[0] - left[0], r1 = total[1] - left[1];
        const double score = (left[0] * left[0] + left[1] * left[1]) / nl + (r0 * r0 + r1 * r1) / nr;
        if (score > best.score) {
          double t = col[i].first + (col[i + 1].first - col[i].first) / 2.0;
          if (!(t < col[i + 1].first)) t = col[i].first;
          best = Split{static_cast<int>(f), t, score};
        }
      }
    }
    return best;
  }

  int grow(std::vector<std::size_t> rows, std::size_t depth) {
    const int id = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    std::array<double, 2> counts{};
    for (auto r : rows) counts[static_cast<std::size_t>(data.y[r])] += 1;
    tree.nodes[static_cast<std::size_t>(id)].counts = counts;

    const bool pure = counts[0] == 0 || counts[1] == 0;
    const bool depth_reached = config.max_depth != 0 && depth >= config.max_depth;
    if (pure || rows.size() < config.min_samples_split || depth_reached) return id;

    const auto split = best_split(rows);
    if (split.feature < 0) return id;  // every candidate feature is constant here
    std::vector<std::size_t> left, right;
    for (auto r : rows)
      (data.x[r][static_cast<std::size_t>(split.feature)] <= split.threshold ? left : right).push_back(r);
    rows.clear();
    rows.shrink_to_fit();
    const int l = grow(std::move(left), depth + 1);
    const int r = grow(std::move(right), depth + 1);
    auto& node = tree.nodes[static_cast<std::size_t>(id)];
    node.feature = split.feature;
    node.threshold = split.threshold;
    node.left = l;
    node.right = r;
    return id;
  }
};

std::size_t resolve_max_features(const ForestConfig& config, std::size_t width) {
  const std::size_t m = config.max_features.value_or(
      static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(width)))));
  return std::clamp<std::size_t>(m, 1, std::max<std::size_t>(width, 1));
}

}  // namespace

DecisionTree fit_tree(const Dataset& data, std::span<const std::size_t> rows, const ForestConfig& config,
                      std::uint64_t seed) {
  if (rows.empty()) throw Error(ErrorKind::TooFewSamples, "cannot fit a tree on zero rows");
  TreeBuilder b{data, config, resolve_max_features(config, data.width()), Rng(seed), {}};
  b.grow(std::vector<std::size_t>(rows.begin(), rows.end()), 0);
  return std::move(b.tree);
}

RandomForest fit_forest(const Dataset& train, const ForestConfig& config, std::uint64_t seed, unsigned threads) {
  if (train.size() == 0) throw Error(ErrorKind::TooFewSamples, "empty training set");
  if (config.n_trees == 0) throw Error(ErrorKind::ConfigError, "n_trees must be positive");
  RandomForest model;
  model.feature_names = train.feature_names;
  model.config = config;
  model.seed = seed;
  model.trees.resize(config.n_trees);
  parallel_for(config.n_trees, threads, [&](std::size_t t) {
    const auto tree_seed = derive_seed(seed, t);
    std::vector<std::size_t> rows(train.size());
    if (config.bootstrap) {
      Rng rng(derive_seed(tree_seed, 0xB007));
      for (auto& r : rows) r = rng.index(train.size());
    } else {
      for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
    }
    model.trees[t] = fit_tree(train, rows, config, tree_seed);
  });
  return model;
}

double RandomForest::predict_proba(std::span<const double> x) const {
  if (x.size() != feature_names.size())
    throw Error(ErrorKind::FeatureMismatch, "instance has " + std::to_string(x.size()) + " features, model expects " +
                                                std::to_string(feature_names.size()));
  double sum = 0;
  for (const auto& t : trees) sum += t.predict_proba(x);
  return sum / static_cast<double>(trees.size());
}

Label RandomForest::predict(std::span<const double> x) const {
  return predict_proba(x) > 0.5 ? Label::Rumour : Label::NonRumour;
}

// ---------------------------------------------------------------------------
// metrics

std::string_view to_string(Averaging a) {
  switch (a) {
    case Averaging::Weighted: return "weighted";
    case Averaging::Macro: return "macro";
    case Averaging::Binary: return "binary";
  }
  return "weighted";
}

Averaging parse_averaging(std::string_view s) {
  if (s == "weighted") return Averaging::Weighted;
  if (s == "macro") return Averaging::Macro;
  if (s == "binary") return Averaging::Binary;
  throw Error(ErrorKind::ConfigError, "unknown averaging '" + std::string(s) + "'");
}

Metrics metrics_from_confusion(const Confusion& c, Averaging averaging) {
  Metrics out;
  out.confusion = c;
  const double total = static_cast<double>(c.total());
  if (total == 0) return out;
  out.accuracy = static_cast<double>(c.m[0][0] + c.m[1][1]) / total;
  std::array<double, 2> p{}, r{}, f{}, support{};
  for (std::size_t k = 0; k < 2; ++k) {
    const double tp = static_cast<double>(c.m[k][k]);
    const double predicted = static_cast<double>(c.m[0][k] + c.m[1][k]);
    support[k] = static_cast<double>(c.m[k][0] + c.m[k][1]);
    p[k] = predicted > 0 ? tp / predicted : 0.0;
    r[k] = support[k] > 0 ? tp / support[k] : 0.0;
    f[k] = p[k] + r[k] > 0 ? 2 * p[k] * r[k] / (p[k] + r[k]) : 0.0;
  }
  switch (averaging) {
    case Averaging::Binary:
      out.precision = p[1];
      out.recall = r[1];
      out.f1 = f[1];
      break;
    case Averaging::Macro:
      out.precision = (p[0] + p[1]) / 2;
      out.recall = (r[0] + r[1]) / 2;
      out.f1 = (f[0] + f[1]) / 2;
      break;
    case Averaging::Weighted:
      out.precision = (p[0] * support[0] + p[1] * support[1]) / total;
      out.recall = (r[0] * support[0] + r[1] * support[1]) / total;
      out.f1 = (f[0] * support[0] + f[1] * support[1]) / total;
      break;
  }
  return out;
}

Metrics evaluate(const RandomForest& model, const Dataset& test, Averaging averaging) {
  Confusion c;
  for (std::size_t i = 0; i < test.size(); ++i)
    ++c.m[static_cast<std::size_t>(test.y[i])][static_cast<std::size_t>(model.predict(test.x[i]))];
  return metrics_from_confusion(c, averaging);
}

// ---------------------------------------------------------------------------
// cross-validation

std::vector<std::vector<std::size_t>> make_cv_folds(std::span<const Label> labels, std::size_t k,
                                                    std::uint64_t seed) {
  auto classes = by_class(labels);
  const std::size_t minority = std::min(classes[0].size(), classes[1].size());
  if (minority < 2) throw Error(ErrorKind::TooFewSamples, "cross-validation needs at least 2 samples per class");
  if (k < 2) throw Error(ErrorKind::ConfigError, "k must be at least 2");
  if (k > minority) {
    warn("cross-validation: reducing k from " + std::to_string(k) + " to " + std::to_string(minority) +
         " (minority class size)");
    k = minority;
  }
  std::vector<std::vector<std::size_t>> folds(k);
  std::size_t next = 0;
  for (std::size_t c = 0; c < 2; ++c) {
    Rng rng(derive_seed(seed, 0xF01D + c));
    rng.shuffle(classes[c]);
    for (auto i : classes[c]) folds[next++ % k].push_back(i);
  }
  for (auto& f : folds) std::sort(f.begin(), f.end());
  return folds;
}

bool disjoint_ids(const FoldRecord& record) {
  const std::set<std::string> test(record.test_ids.begin(), record.test_ids.end());
  return std::none_of(record.train_ids.begin(), record.train_ids.end(),
                      [&](const std::string& id) { return test.contains(id); });
}

CvResult cross_validate(const std::vector<std::string>& names, std::span<const FeatureRow> rows, std::size_t k,
                        const ForestConfig& config, Averaging averaging, std::uint64_t seed, unsigned threads) {
  std::vector<Label> labels;
  for (const auto& r : rows) labels.push_back(r.label);
  const auto folds = make_cv_folds(labels, k, seed);
  CvResult out;
  for (std::size_t f = 0; f < folds.size(); ++f) {
    std::vector<FeatureRow> train_rows, test_rows;
    std::size_t next = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (next < folds[f].size() && folds[f][next] == i) {
        test_rows.push_back(rows[i]);
        ++next;
      } else {
        train_rows.push_back(rows[i]);
      }
    }
    const auto imputer = Imputer::fit(train_rows, names.size());
    const auto train = oversample(imputer.transform(names, train_rows), derive_seed(seed, 0x0F00 + f));
    const auto test = imputer.transform(names, test_rows);
    const auto model = fit_forest(train, config, derive_seed(seed, 0xC0DE + f), threads);
    out.folds.push_back(evaluate(model, test, averaging));
    out.records.push_back(FoldRecord{train.ids, test.ids});
    if (!disjoint_ids(out.records.back()))
      throw Error(ErrorKind::TooFewSamples, "fold " + std::to_string(f) + " leaks test ids into training");
  }
  std::vector<double> acc;
  for (const auto& m : out.folds) acc.push_back(m.accuracy);
  out.mean_accuracy = mean(acc);
  out.std_accuracy = stddev(acc);
  return out;
}

// ---------------------------------------------------------------------------
// serialization

namespace {

constexpr std::string_view kModelFormat = "rumourlens-forest";
constexpr int kModelVersion = 1;

json metrics_json(const Metrics& m) {
  return json{{"accuracy", m.accuracy},
              {"precision", m.precision},
              {"recall", m.recall},
              {"f1", m.f1},
              {"confusion", {{m.confusion.m[0][0], m.confusion.m[0][1]}, {m.confusion.m[1][0], m.confusion.m[1][1]}}}};
}

Metrics metrics_from(const json& j) {
  Metrics m;
  m.accuracy = j.at("accuracy").get<double>();
  m.precision = j.at("precision").get<double>();
  m.recall = j.at("recall").get<double>();
  m.f1 = j.at("f1").get<double>();
  const auto& c = j.at("confusion");
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t p = 0; p < 2; ++p) m.confusion.m[a][p] = c.at(a).at(p).get<std::size_t>();
  return m;
}

}  // namespace

std::string RandomForest::to_json() const {
  json j;
  j["format"] = kModelFormat;
  j["version"] = kModelVersion;
  j["feature_names"] = feature_names;
  j["medians"] = medians;
  json cfg{{"n_trees", config.n_trees},
           {"min_samples_split", config.min_samples_split},
           {"max_depth", config.max_depth},
           {"bootstrap", config.bootstrap}};
  cfg["max_features"] = config.max_features ? json(*config.max_features) : json(nullptr);
  j["config"] = cfg;
  j["seed"] = seed;
  j["fold_scores"] = json::array();
  for (const auto& m : fold_scores) j["fold_scores"].push_back(metrics_json(m));
  j["trees"] = json::array();
  for (const auto& t : trees) {
    json feature = json::array(), threshold = json::array(), left = json::array(), right = json::array(),
         counts = json::array();
    for (const auto& n : t.nodes) {
      feature.push_back(n.feature);
      threshold.push_back(n.threshold);
      left.push_back(n.left);
      right.push_back(n.right);
      counts.push_back({n.counts[0], n.counts[1]});
    }
    j["trees"].push_back(
        {{"feature", feature}, {"threshold", threshold}, {"left", left}, {"right", right}, {"counts", counts}});
  }
  return j.dump(1) + "\n";
}

RandomForest RandomForest::from_json(std::string_view text) {
  RandomForest m;
  try {
    const auto j = json::parse(text);
    if (j.at("format").get<std::string>() != kModelFormat || j.at("version").get<int>() != kModelVersion)
      throw Error(ErrorKind::ParseError, "unsupported model format/version");
    m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    m.medians = j.at("medians").get<std::vector<double>>();
    const auto& cfg = j.at("config");
    m.config.n_trees = cfg.at("n_trees").get<std::size_t>();
    m.config.min_samples_split = cfg.at("min_samples_split").get<std::size_t>();
    m.config.max_depth = cfg.at("max_depth").get<std::size_t>();
    m.config.bootstrap = cfg.at("bootstrap").get<bool>();
    if (!cfg.at("max_features").is_null()) m.config.max_features = cfg.at("max_features").get<std::size_t>();
    m.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& f : j.at("fold_scores")) m.fold_scores.push_back(metrics_from(f));
    for (const auto& t : j.at("trees")) {
      DecisionTree tree;
      const auto& feature = t.at("feature");
      for (std::size_t i = 0; i < feature.size(); ++i) {
        TreeNode n;
        n.feature = feature.at(i).get<int>();
        n.threshold = t.at("threshold").at(i).get<double>();
        n.left = t.at("left").at(i).get<int>();
        n.right = t.at("right").at(i).get<int>();
        n.counts = {t.at("counts").at(i).at(0).get<double>(), t.at("counts").at(i).at(1).get<double>()};
        const auto limit = static_cast<int>(feature.size());
        if (!n.is_leaf() && (n.feature >= static_cast<int>(m.feature_names.size()) || n.left <= static_cast<int>(i) ||
                             n.right <= static_cast<int>(i) || n.left >= limit || n.right >= limit))
          throw Error(ErrorKind::ParseError, "tree node " + std::to_string(i) + " has invalid links");
        tree.nodes.push_back(n);
      }
      if (tree.nodes.empty()) throw Error(ErrorKind::ParseError, "empty tree");
      m.trees.push_back(std::move(tree));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("model JSON: ") + e.what());
  }
  if (!m.medians.empty() && m.medians.size() != m.feature_names.size())
    throw Error(ErrorKind::ParseError, "model JSON: medians and feature names differ in length");
  return m;
}

}  // namespace rumourlens
