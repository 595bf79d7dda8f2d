#include "rumourlens/features.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "rumourlens/error.hpp"
#include "rumourlens/readability.hpp"
#include "rumourlens/util.hpp"

namespace rumourlens {

namespace {

constexpr std::array<std::string_view, 5> kReadabilityNames = {"flesch", "flesch_kincaid", "gunning_fog", "smog",
                                                               "dale_chall"};
constexpr std::array<std::string_view, 5> kSenticNames = {"pleasantness", "attention", "sensitivity", "aptitude",
                                                          "polarity"};
constexpr std::string_view kAbsentSuffix = "__absent";

void require(const void* p, const char* what) {
  if (!p) throw Error(ErrorKind::ConfigError, std::string("feature extraction needs ") + what);
}

std::vector<std::optional<double>> text_features(const Tweet& t, const FeatureResources& res, std::size_t width) {
  std::vector<std::optional<double>> v;
  v.reserve(width);
  if (t.empty_text()) {
    v.resize(width);
    return v;
  }
  const auto tokens = tokenize(t.text);
  const auto profile = score(tokens, *res.lexicon);
  for (const auto& c : res.lexicon->categories()) v.push_back(profile.categories.at(c.key));
  for (const auto& k : punctuation_keys()) v.push_back(profile.punctuation.at(k));

  if (const auto r = readability_of(t.text, *res.easy_words)) {
    v.insert(v.end(), {r->flesch, r->flesch_kincaid, r->gunning_fog, r->smog, r->dale_chall});
  } else {
    v.resize(v.size() + kReadabilityNames.size());
  }

  const auto sf = sentic_features(clean_for_senticnet(t.text, *res.stopwords, *res.lemmatizer), *res.sentic);
  if (sf.values) {
    const auto& s = *sf.values;
    v.insert(v.end(), {s.pleasantness, s.attention, s.sensitivity, s.aptitude, s.polarity});
  } else {
    v.resize(v.size() + kSenticNames.size());
  }
  return v;
}

}  // namespace

std::optional<std::size_t> FeatureMatrix::index_of(std::string_view name) const {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names.begin());
}

std::vector<std::string> feature_names(const FeatureResources& res) {
  require(res.lexicon, "a lexicon");
  std::vector<std::string> names;
  for (const auto& c : res.lexicon->categories()) names.push_back("liwc." + c.key);
  for (const auto& k : punctuation_keys()) names.push_back("punct." + k);
  for (auto n : kReadabilityNames) names.push_back("read." + std::string(n));
  for (auto n : kSenticNames) names.push_back("sentic." + std::string(n));
  if (res.emotions)
    for (auto n : kEmotionLabels) names.push_back("emotion." + std::string(n));
  return names;
}

FeatureMatrix extract_features(const std::vector<EventCorpus>& corpora, const FeatureResources& res,
                               unsigned threads) {
  require(res.lexicon, "a lexicon");
  require(res.sentic, "a sentic table");
  require(res.easy_words, "an easy-word list");
  require(res.stopwords, "a stopword list");
  require(res.lemmatizer, "a lemmatizer");

  FeatureMatrix m;
  m.names = feature_names(res);
  std::vector<const EventCorpus*> order;
  for (const auto& c : corpora) order.push_back(&c);
  std::sort(order.begin(), order.end(), [](auto* l, auto* r) { return l->event < r->event; });
  std::vector<const Tweet*> tweets;
  for (const auto* c : order) {
    for (const auto& t : c->sources) tweets.push_back(&t);
    for (const auto& t : c->reactions) tweets.push_back(&t);
  }

  const std::size_t text_width = m.names.size() - (res.emotions ? kEmotionCount : 0);
  m.rows.resize(tweets.size());
  parallel_for(tweets.size(), threads, [&](std::size_t i) {
    const Tweet& t = *tweets[i];
    m.rows[i] = FeatureRow{t.id, t.event, t.role, t.label, text_features(t, res, text_width)};
  });

  if (res.emotions) {
    std::vector<std::string> texts;
    std::vector<std::size_t> where;
    for (std::size_t i = 0; i < tweets.size(); ++i) {
      if (tweets[i]->empty_text()) continue;
      texts.push_back(tweets[i]->text);
      where.push_back(i);
    }
    const auto dists = res.emotions->classify(texts);
    if (dists.size() != texts.size())
      throw Error(ErrorKind::MalformedResponse, "emotion provider returned the wrong number of results");
    for (auto& row : m.rows) row.values.resize(m.names.size());
    for (std::size_t k = 0; k < where.size(); ++k)
      for (std::size_t e = 0; e < kEmotionCount; ++e) m.rows[where[k]].values[text_width + e] = dists[k].scores[e];
  }
  return m;
}

std::string to_csv(const FeatureMatrix& m) {
  std::vector<std::string> header{"id", "event", "role", "label"};
  for (const auto& n : m.names) {
    header.push_back(n);
    header.push_back(n + std::string(kAbsentSuffix));
  }
  std::string out = csv_row(header);
  for (const auto& r : m.rows) {
    std::vector<std::string> fields{r.id, r.event, std::string(to_string(r.role)), std::string(to_string(r.label))};
    for (const auto& v : r.values) {
      fields.push_back(v ? format_double(*v) : std::string());
      fields.push_back(v ? "0" : "1");
    }
    out += csv_row(fields);
  }
  return out;
}

FeatureMatrix feature_matrix_from_csv(std::string_view csv_text) {
  std::istringstream in{std::string(csv_text)};
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::ParseError, "feature CSV is empty");
  const auto header = csv_parse_line(line);
  if (header.size() < 4 || (header.size() - 4) % 2 != 0 || header[0] != "id" || header[1] != "event" ||
      header[2] != "role" || header[3] != "label")
    throw Error(ErrorKind::ParseError, "feature CSV header is malformed");
  FeatureMatrix m;
  for (std::size_t i = 4; i < header.size(); i += 2) {
    if (header[i + 1] != header[i] + std::string(kAbsentSuffix))
      throw Error(ErrorKind::ParseError, "feature CSV: column " + header[i] + " lacks its absence flag");
    m.names.push_back(header[i]);
  }
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = csv_parse_line(line);
    const auto where = "feature CSV line " + std::to_string(line_no);
    if (f.size() != header.size()) throw Error(ErrorKind::ParseError, where + ": wrong field count");
    FeatureRow row{f[0], f[1], parse_role(f[2]), parse_label(f[3]), {}};
    for (std::size_t i = 4; i < f.size(); i += 2) {
      if (f[i + 1] == "1") {
        row.values.emplace_back();
        continue;
      }
      const auto v = parse_double(f[i]);
      if (!v || f[i + 1] != "0") throw Error(ErrorKind::ParseError, where + ": bad value for " + header[i]);
      row.values.push_back(*v);
    }
    m.rows.push_back(std::move(row));
  }
  return m;
}

}  // namespace rumourlens
