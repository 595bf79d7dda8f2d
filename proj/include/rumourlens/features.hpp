#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rumourlens/corpus.hpp"
#include "rumourlens/emotions.hpp"
#include "rumourlens/lexicon.hpp"
#include "rumourlens/senticnet.hpp"
#include "rumourlens/textprep.hpp"

namespace rumourlens {

struct FeatureRow {
  std::string id;
  std::string event;
  Role role = Role::Source;
  Label label = Label::NonRumour;
  std::vector<std::optional<double>> values;

  bool operator==(const FeatureRow&) const = default;
};

// One row per tweet; column order is fixed corpus-wide.
struct FeatureMatrix {
  std::vector<std::string> names;
  std::vector<FeatureRow> rows;

  std::optional<std::size_t> index_of(std::string_view name) const;
  bool operator==(const FeatureMatrix&) const = default;
};

// Everything needed to featurize text. The emotion provider is optional;
// without it the emotion columns are omitted.
struct FeatureResources {
  const Lexicon* lexicon = nullptr;
  const SenticTable* sentic = nullptr;
  const EasyWordList* easy_words = nullptr;
  const StopwordSet* stopwords = nullptr;
  const Lemmatizer* lemmatizer = nullptr;
  EmotionProvider* emotions = nullptr;
};

// Column names: liwc.<key>, punct.<key>, read.<index>, sentic.<dimension>,
// emotion.<label>.
std::vector<std::string> feature_names(const FeatureResources& resources);

// Rows ordered by event, then sources before reactions, then id.
// Whitespace-only tweets get an all-absent row.
FeatureMatrix extract_features(const std::vector<EventCorpus>& corpora, const FeatureResources& resources,
                               unsigned threads = 1);

// Header: id,event,role,label, then per feature "<name>,<name>__absent".
// Absent values are an empty cell with the flag set to 1.
std::string to_csv(const FeatureMatrix& matrix);
FeatureMatrix feature_matrix_from_csv(std::string_view csv_text);

}  // namespace rumourlens
