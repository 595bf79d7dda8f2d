#include "rumourlens/config.hpp"

#include <cstdlib>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "rumourlens/error.hpp"
#include "rumourlens/util.hpp"

#ifndef RUMOURLENS_DATA_DIR
#define RUMOURLENS_DATA_DIR "data"
#endif

namespace fs = std::filesystem;

namespace rumourlens {

std::string_view to_string(DatasetFormat f) {
  switch (f) {
    case DatasetFormat::Auto: return "auto";
    case DatasetFormat::Pheme: return "pheme";
    case DatasetFormat::Jsonl: return "jsonl";
  }
  return "auto";
}

std::string_view to_string(EmotionProviderKind k) {
  switch (k) {
    case EmotionProviderKind::None: return "none";
    case EmotionProviderKind::Fallback: return "fallback";
    case EmotionProviderKind::Remote: return "remote";
  }
  return "none";
}

std::string_view to_string(Scope s) {
  switch (s) {
    case Scope::Sources: return "sources";
    case Scope::Reactions: return "reactions";
    case Scope::Both: return "both";
  }
  return "both";
}

unsigned RunConfig::thread_count() const { return threads == 0 ? default_thread_count() : threads; }

namespace {

[[noreturn]] void bad(std::string_view key, std::string_view value, std::string_view expected) {
  throw Error(ErrorKind::ConfigError,
              std::string(key) + " = '" + std::string(value) + "': expected " + std::string(expected));
}

double as_double(std::string_view key, std::string_view v) {
  const auto d = parse_double(v);
  if (!d) bad(key, v, "a number");
  return *d;
}

std::uint64_t as_uint(std::string_view key, std::string_view v) {
  if (v.empty() || v.find_first_not_of("0123456789") != std::string_view::npos) bad(key, v, "a non-negative integer");
  try {
    return std::stoull(std::string(v));
  } catch (const std::exception&) {
    bad(key, v, "a non-negative integer");
  }
}

bool as_bool(std::string_view key, std::string_view v) {
  const auto s = to_lower_ascii(v);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  bad(key, v, "true or false");
}

fs::path as_path(std::string_view v, const fs::path& base) {
  fs::path p{std::string(v)};
  if (p.is_relative() && !base.empty()) p = base / p;
  return p.lexically_normal();
}

std::string path_text(const fs::path& p) { return p.generic_string(); }

}  // namespace

void apply_setting(RunConfig& c, std::string_view key, std::string_view value, const fs::path& base) {
  const std::string v(trim(value));
  if (key == "dataset") c.dataset = as_path(v, base);
  else if (key == "dataset_format") {
    if (v == "auto") c.dataset_format = DatasetFormat::Auto;
    else if (v == "pheme") c.dataset_format = DatasetFormat::Pheme;
    else if (v == "jsonl") c.dataset_format = DatasetFormat::Jsonl;
    else bad(key, v, "auto, pheme or jsonl");
  } else if (key == "lexicon") c.lexicon = as_path(v, base);
  else if (key == "sentic") c.sentic = as_path(v, base);
  else if (key == "easy_words") c.easy_words = as_path(v, base);
  else if (key == "stopwords") c.stopwords = as_path(v, base);
  else if (key == "lemma_exceptions") c.lemma_exceptions = as_path(v, base);
  else if (key == "emotion_provider") {
    if (v == "none") c.emotion_provider = EmotionProviderKind::None;
    else if (v == "fallback") c.emotion_provider = EmotionProviderKind::Fallback;
    else if (v == "remote") c.emotion_provider = EmotionProviderKind::Remote;
    else bad(key, v, "none, fallback or remote");
  } else if (key == "emotion_lexicon") c.emotion_lexicon = as_path(v, base);
  else if (key == "emotion_url") c.emotion_url = v;
  else if (key == "emotion_cassette") {
    if (v.empty()) c.emotion_cassette.reset();
    else c.emotion_cassette = as_path(v, base);
  } else if (key == "emotion_timeout_ms") c.emotion_timeout_ms = static_cast<int>(as_uint(key, v));
  else if (key == "emotion_retries") c.emotion_retries = static_cast<int>(as_uint(key, v));
  else if (key == "emotion_batch_size") c.emotion_batch_size = as_uint(key, v);
  else if (key == "emotion_max_in_flight") c.emotion_max_in_flight = as_uint(key, v);
  else if (key == "alpha") c.alpha = as_double(key, v);
  else if (key == "split_ratio") c.split_ratio = as_double(key, v);
  else if (key == "cv_folds") c.cv_folds = as_uint(key, v);
  else if (key == "n_trees") c.forest.n_trees = as_uint(key, v);
  else if (key == "min_samples_split") c.forest.min_samples_split = as_uint(key, v);
  else if (key == "max_depth") c.forest.max_depth = as_uint(key, v);
  else if (key == "max_features") {
    if (v == "sqrt" || v.empty()) c.forest.max_features.reset();
    else c.forest.max_features = as_uint(key, v);
  } else if (key == "bootstrap") c.forest.bootstrap = as_bool(key, v);
  else if (key == "averaging") c.averaging = parse_averaging(v);
  else if (key == "shap_background") c.shap_background = as_uint(key, v);
  else if (key == "scope") {
    if (v == "sources") c.scope = Scope::Sources;
    else if (v == "reactions") c.scope = Scope::Reactions;
    else if (v == "both") c.scope = Scope::Both;
    else bad(key, v, "sources, reactions or both");
  } else if (key == "seed") c.seed = as_uint(key, v);
  else if (key == "threads") c.threads = static_cast<unsigned>(as_uint(key, v));
  else if (key == "out") c.out = as_path(v, base);
  else if (key == "run_id") {
    if (v.empty() || v.find_first_of("/\\") != std::string::npos || v == "." || v == "..")
      bad(key, v, "a plain directory name");
    c.run_id = v;
  } else {
    throw Error(ErrorKind::ConfigError, "unknown config key '" + std::string(key) + "'");
  }
}

std::map<std::string, std::string> to_key_values(const RunConfig& c) {
  return {
      {"dataset", path_text(c.dataset)},
      {"dataset_format", std::string(to_string(c.dataset_format))},
      {"lexicon", path_text(c.lexicon)},
      {"sentic", path_text(c.sentic)},
      {"easy_words", path_text(c.easy_words)},
      {"stopwords", path_text(c.stopwords)},
      {"lemma_exceptions", path_text(c.lemma_exceptions)},
      {"emotion_provider", std::string(to_string(c.emotion_provider))},
      {"emotion_lexicon", path_text(c.emotion_lexicon)},
      {"emotion_url", c.emotion_url},
      {"emotion_cassette", c.emotion_cassette ? path_text(*c.emotion_cassette) : ""},
      {"emotion_timeout_ms", std::to_string(c.emotion_timeout_ms)},
      {"emotion_retries", std::to_string(c.emotion_retries)},
      {"emotion_batch_size", std::to_string(c.emotion_batch_size)},
      {"emotion_max_in_flight", std::to_string(c.emotion_max_in_flight)},
      {"alpha", format_double(c.alpha)},
      {"split_ratio", format_double(c.split_ratio)},
      {"cv_folds", std::to_string(c.cv_folds)},
      {"n_trees", std::to_string(c.forest.n_trees)},
      {"min_samples_split", std::to_string(c.forest.min_samples_split)},
      {"max_depth", std::to_string(c.forest.max_depth)},
      {"max_features", c.forest.max_features ? std::to_string(*c.forest.max_features) : "sqrt"},
      {"bootstrap", c.forest.bootstrap ? "true" : "false"},
      {"averaging", std::string(to_string(c.averaging))},
      {"shap_background", std::to_string(c.shap_background)},
      {"scope", std::string(to_string(c.scope))},
      {"seed", std::to_string(c.seed)},
      {"threads", std::to_string(c.threads)},
      {"out", path_text(c.out)},
      {"run_id", c.run_id},
  };
}

void apply_config_text(RunConfig& c, std::string_view text, const fs::path& base) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto v = trim(line);
    if (v.empty()) continue;
    const auto eq = v.find('=');
    if (eq == std::string_view::npos)
      throw Error(ErrorKind::ConfigError, "config line " + std::to_string(line_no) + ": expected key = value");
    try {
      apply_setting(c, trim(v.substr(0, eq)), trim(v.substr(eq + 1)), base);
    } catch (const Error& e) {
      throw Error(ErrorKind::ConfigError, "config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

void apply_environment(RunConfig& c) {
  for (const auto& [key, unused] : to_key_values(c)) {
    std::string name(kEnvPrefix);
    for (char ch : key) name += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    if (const char* v = std::getenv(name.c_str())) apply_setting(c, key, v, fs::current_path());
  }
}

RunConfig load_run_config(const std::optional<fs::path>& file) {
  RunConfig c;
  const fs::path data(RUMOURLENS_DATA_DIR);
  c.lexicon = data / "demo_lexicon.json";
  c.sentic = data / "sentic_demo.csv";
  c.easy_words = data / "easy_words.txt";
  c.stopwords = data / "stopwords.txt";
  c.lemma_exceptions = data / "lemma_exceptions.tsv";
  c.emotion_lexicon = data / "emotion_lexicon.tsv";
  if (file) {
    const auto base = fs::absolute(*file).parent_path();
    apply_config_text(c, read_file(*file), base);
  }
  apply_environment(c);
  return c;
}

void RunConfig::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorKind::ConfigError, msg); };
  if (dataset.empty()) fail("dataset is not set");
  if (!fs::exists(dataset)) fail("dataset " + dataset.string() + " does not exist");
  for (const auto* p : {&lexicon, &sentic, &easy_words, &stopwords, &lemma_exceptions})
    if (!fs::is_regular_file(*p)) fail("missing data file " + p->string());
  if (emotion_provider == EmotionProviderKind::Fallback && !fs::is_regular_file(emotion_lexicon))
    fail("missing emotion lexicon " + emotion_lexicon.string());
  if (emotion_provider == EmotionProviderKind::Remote && emotion_url.empty() && !emotion_cassette)
    fail("remote emotion provider needs emotion_url or emotion_cassette");
  if (!(alpha > 0 && alpha < 1)) fail("alpha must be in (0, 1)");
  if (!(split_ratio > 0 && split_ratio < 1)) fail("split_ratio must be in (0, 1)");
  if (cv_folds < 2) fail("cv_folds must be at least 2");
  if (forest.n_trees == 0) fail("n_trees must be positive");
  if (forest.min_samples_split < 2) fail("min_samples_split must be at least 2");
  if (forest.max_features && *forest.max_features == 0) fail("max_features must be positive");
  if (shap_background == 0) fail("shap_background must be positive");
  if (emotion_batch_size == 0 || emotion_max_in_flight == 0) fail("emotion batch size and in-flight limit must be positive");
}

std::string to_json(const RunConfig& c) {
  nlohmann::json j(to_key_values(c));
  return j.dump(1) + "\n";
}

}  // namespace rumourlens
