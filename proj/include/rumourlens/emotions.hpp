#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace rumourlens {

inline constexpr std::size_t kEmotionCount = 7;
// Fixed order; also the argmax tie-break order.
inline constexpr std::array<std::string_view, kEmotionCount> kEmotionLabels = {
    "anger", "disgust", "fear", "joy", "neutral", "sadness", "surprise"};

std::optional<std::size_t> emotion_index(std::string_view label);

struct EmotionDist {
  std::array<double, kEmotionCount> scores{};
  bool low_confidence = false;  // fallback found no emotion words

  std::size_t argmax() const;
  std::string_view label() const { return kEmotionLabels[argmax()]; }
};

class EmotionProvider {
 public:
  virtual ~EmotionProvider() = default;
  virtual std::string name() const = 0;
  // One distribution per text, in input order.
  virtual std::vector<EmotionDist> classify(const std::vector<std::string>& texts) = 0;
};

// Word-list provider: normalized hit counts over the seven labels; uniform
// (and low-confidence) when nothing matches.
class LexiconEmotionProvider final : public EmotionProvider {
 public:
  explicit LexiconEmotionProvider(std::unordered_map<std::string, std::size_t> words);
  // TSV: word<TAB>label.
  static LexiconEmotionProvider from_file(const std::filesystem::path& path);

  std::string name() const override { return "fallback"; }
  std::vector<EmotionDist> classify(const std::vector<std::string>& texts) override;
  EmotionDist classify_one(std::string_view text) const;

 private:
  std::unordered_map<std::string, std::size_t> words_;
};

struct RemoteEmotionOptions {
  std::string url;  // base URL; requests go to <url>/classify. Empty = replay only.
  int timeout_ms = 10000;
  int retries = 2;
  std::size_t batch_size = 16;
  std::size_t max_in_flight = 4;
  std::optional<std::filesystem::path> cassette;  // replayed first, new responses appended
};

// POST /classify {"texts":[..]} -> [{"label":..,"scores":{label: p}}].
class RemoteEmotionProvider final : public EmotionProvider {
 public:
  explicit RemoteEmotionProvider(RemoteEmotionOptions options);

  std::string name() const override { return "remote"; }
  std::vector<EmotionDist> classify(const std::vector<std::string>& texts) override;

  // Exposed for tests: the cassette key of a request body.
  static std::string request_body(const std::vector<std::string>& texts);
  static std::string request_hash(const std::string& body);
  // Throws MalformedResponse.
  static std::vector<EmotionDist> parse_response(std::string_view body, std::size_t expected);

 private:
  std::vector<EmotionDist> classify_batch(const std::vector<std::string>& texts);
  std::string post(const std::string& body);

  RemoteEmotionOptions options_;
  std::mutex cassette_mutex_;
  std::unordered_map<std::string, std::string> cassette_;  // hash -> response body
};

// Column order: rumour sources, non-rumour sources, rumour reactions,
// non-rumour reactions.
inline constexpr std::array<std::string_view, 4> kPopulationNames = {"r_src", "nr_src", "r_re", "nr_re"};

struct EmotionTable {
  // Percentage of tweets whose argmax is each label; absent for empty populations.
  std::array<std::optional<std::array<double, kEmotionCount>>, 4> percent;
  std::array<std::size_t, 4> n{};
};

EmotionTable emotion_table(const std::array<std::vector<EmotionDist>, 4>& populations);
EmotionTable emotion_table(const std::array<std::vector<std::string>, 4>& population_texts, EmotionProvider& provider);

}  // namespace rumourlens
