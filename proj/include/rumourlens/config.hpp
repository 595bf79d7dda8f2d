#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "rumourlens/classify.hpp"

namespace rumourlens {

enum class DatasetFormat { Auto, Pheme, Jsonl };
enum class EmotionProviderKind { None, Fallback, Remote };
enum class Scope { Sources, Reactions, Both };

std::string_view to_string(DatasetFormat f);
std::string_view to_string(EmotionProviderKind k);
std::string_view to_string(Scope s);

struct RunConfig {
  std::filesystem::path dataset;
  DatasetFormat dataset_format = DatasetFormat::Auto;
  std::filesystem::path lexicon;
  std::filesystem::path sentic;
  std::filesystem::path easy_words;
  std::filesystem::path stopwords;
  std::filesystem::path lemma_exceptions;

  EmotionProviderKind emotion_provider = EmotionProviderKind::Fallback;
  std::filesystem::path emotion_lexicon;
  std::string emotion_url;
  std::optional<std::filesystem::path> emotion_cassette;
  int emotion_timeout_ms = 10000;
  int emotion_retries = 2;
  std::size_t emotion_batch_size = 16;
  std::size_t emotion_max_in_flight = 4;

  double alpha = 0.05;
  double split_ratio = 0.8;
  std::size_t cv_folds = 10;
  ForestConfig forest;
  Averaging averaging = Averaging::Weighted;
  std::size_t shap_background = 256;
  Scope scope = Scope::Both;

  std::uint64_t seed = 42;
  unsigned threads = 0;  // 0 = all cores
  std::filesystem::path out = "out";
  std::string run_id = "default";

  std::filesystem::path run_dir() const { return out / run_id; }
  unsigned thread_count() const;

  // Throws ConfigError on the first invalid value or missing input.
  void validate() const;
};

// Every key with its current value, as text; the persisted form.
std::map<std::string, std::string> to_key_values(const RunConfig& config);

// Applies one key=value; relative paths resolve against base_dir.
// Throws ConfigError for unknown keys and bad values.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value,
                   const std::filesystem::path& base_dir);

// Flat "key = value" lines, '#' comments.
void apply_config_text(RunConfig& config, std::string_view text, const std::filesystem::path& base_dir);

inline constexpr std::string_view kEnvPrefix = "RUMOURLENS_";

// RUMOURLENS_<KEY> (upper case) for every known key.
void apply_environment(RunConfig& config);

// Defaults with bundled data files, then the file, then the environment.
RunConfig load_run_config(const std::optional<std::filesystem::path>& file);

std::string to_json(const RunConfig& config);

}  // namespace rumourlens
