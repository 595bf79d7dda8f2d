#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rumourlens {

struct SenticValues {
  double pleasantness = 0;
  double attention = 0;
  double sensitivity = 0;
  double aptitude = 0;
  double polarity = 0;

  bool operator==(const SenticValues&) const = default;
};

inline constexpr std::string_view kSenticCsvHeader = "concept,pleasantness,attention,sensitivity,aptitude,polarity";

// Concept (lowercase, words joined by '_') -> five values in [-1, 1].
class SenticTable {
 public:
  // Throws OutOfRange, DuplicateConcept, ParseError.
  static SenticTable parse_csv(std::string_view csv_text);
  static SenticTable load(const std::filesystem::path& path);

  // Rows sorted by concept; values in shortest round-trip form.
  std::string to_csv() const;
  void save(const std::filesystem::path& path) const;

  // Throws OutOfRange or DuplicateConcept.
  void insert(const std::string& concept_name, const SenticValues& values);
  const SenticValues* find(std::string_view concept_name) const;
  bool contains(std::string_view concept_name) const { return find(concept_name) != nullptr; }
  std::size_t size() const { return entries_.size(); }
  const std::map<std::string, SenticValues, std::less<>>& entries() const { return entries_; }

 private:
  std::map<std::string, SenticValues, std::less<>> entries_;
};

inline constexpr std::size_t kMaxPhraseWords = 4;

// Greedy left-to-right longest match: at each position the 4-, 3-, 2- and
// 1-word joins are tried in turn; a match consumes its words, a miss skips
// one word.
std::vector<std::string> match_concepts(const std::vector<std::string>& lemmas, const SenticTable& table);

struct SenticFeatures {
  std::optional<SenticValues> values;  // mean over matches; absent without matches
  std::size_t matched_concept_count = 0;
};

SenticFeatures sentic_features(const std::vector<std::string>& lemmas, const SenticTable& table);

struct SenticFetchOptions {
  std::string base_url;  // e.g. http://localhost:8080
  int timeout_ms = 5000;
  int retries = 2;
};

// GET <base>/api/en/<concept> -> {"pleasantness":..,"attention":..,...}.
// Throws ProviderUnavailable or MalformedResponse.
SenticValues fetch_sentic_concept(const SenticFetchOptions& options, const std::string& concept_name);

// Fetches every concept not yet cached into `table`; returns how many were added.
std::size_t fetch_missing_concepts(const SenticFetchOptions& options, const std::vector<std::string>& concepts,
                                   SenticTable& table);

}  // namespace rumourlens
