#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "rumourlens/textprep.hpp"

namespace rumourlens {

// Categories either match words (patterns) or report a built-in text metric.
enum class LexiconMetric {
  None,
  WordCount,         // raw word count
  AllPunct,          // all punctuation marks per 100 words
  WordsPerSentence,  // words / sentences
  SixLetterWords,    // % words longer than six letters
  DictionaryWords,   // % words matched by any pattern category
};

struct Category {
  std::string key;
  std::string label;
  std::optional<std::string> parent;
  std::vector<std::string> patterns;  // literal words, or stems ending in '*'
  LexiconMetric metric = LexiconMetric::None;
};

class Lexicon {
 public:
  // JSON: {"name":..,"version":..,"categories":{key:{"label","parent","patterns"|"metric"}}}.
  // Throws CycleError, EmptyCategory, BadPattern, ParseError.
  static Lexicon from_json_text(std::string_view json_text);
  static Lexicon load(const std::filesystem::path& path);

  const std::string& name() const { return name_; }
  const std::string& version() const { return version_; }
  // Sorted by key.
  const std::vector<Category>& categories() const { return categories_; }
  std::size_t top_level_count() const;
  std::optional<std::size_t> index_of(std::string_view key) const;

  // Indices of every pattern category matching the (lowercased) word.
  std::vector<std::size_t> match(std::string_view lower_word) const;

 private:
  void compile();

  std::string name_;
  std::string version_;
  std::vector<Category> categories_;
  std::unordered_map<std::string, std::vector<std::size_t>> literals_;
  std::unordered_map<std::string, std::vector<std::size_t>> stems_;
  std::size_t max_stem_length_ = 0;
};

// True when `pattern` (literal or trailing-'*' stem) matches the word.
bool pattern_matches(std::string_view pattern, std::string_view lower_word);

inline const std::vector<std::string>& punctuation_keys() {
  static const std::vector<std::string> keys = {"period",     "comma",      "semicolon",   "question",
                                                "exclam",     "apostrophe", "parenthesis", "all_punct"};
  return keys;
}

struct CategoryProfile {
  std::size_t word_count = 0;
  // Pattern categories: percentage of words. Metric categories: the metric.
  // Every value is absent when word_count == 0.
  std::map<std::string, std::optional<double>> categories;
  // Marks per 100 words (LIWC convention, so values above 100 are possible).
  std::map<std::string, std::optional<double>> punctuation;
};

CategoryProfile score(const TokenStream& tokens, const Lexicon& lexicon);

struct PopulationProfile {
  // Feature name -> per-tweet values (absent values skipped) and their mean.
  std::map<std::string, std::vector<double>> samples;
  std::map<std::string, std::optional<double>> means;
};

// Feature names are category keys plus "punct.<key>".
PopulationProfile profile_population(const std::vector<std::string>& texts, const Lexicon& lexicon);

// Converts a LIWC-style .dic file to lexicon JSON text. Throws ParseError
// or BadPattern with line numbers.
std::string convert_liwc_dic(std::string_view dic_text, std::string_view name);

}  // namespace rumourlens
