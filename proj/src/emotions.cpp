#include "rumourlens/emotions.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <cmath>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "rumourlens/error.hpp"
#include "rumourlens/textprep.hpp"
#include "rumourlens/util.hpp"

using nlohmann::json;

namespace rumourlens {

std::optional<std::size_t> emotion_index(std::string_view label) {
  for (std::size_t i = 0; i < kEmotionCount; ++i)
    if (kEmotionLabels[i] == label) return i;
  return std::nullopt;
}

std::size_t EmotionDist::argmax() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < kEmotionCount; ++i)
    if (scores[i] > scores[best]) best = i;
  return best;
}

LexiconEmotionProvider::LexiconEmotionProvider(std::unordered_map<std::string, std::size_t> words)
    : words_(std::move(words)) {}

LexiconEmotionProvider LexiconEmotionProvider::from_file(const std::filesystem::path& path) {
  std::unordered_map<std::string, std::size_t> words;
  std::istringstream in(read_file(path));
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view v = trim(line);
    if (v.empty() || v.front() == '#') continue;
    const auto parts = split(v, '\t');
    const auto idx = parts.size() == 2 ? emotion_index(trim(parts[1])) : std::nullopt;
    if (!idx)
      throw Error(ErrorKind::ParseError, path.string() + ":" + std::to_string(line_no) + ": expected word<TAB>label");
    words[to_lower_ascii(trim(parts[0]))] = *idx;
  }
  return LexiconEmotionProvider(std::move(words));
}

EmotionDist LexiconEmotionProvider::classify_one(std::string_view text) const {
  std::array<double, kEmotionCount> hits{};
  double total = 0;
  for (const auto& t : tokenize(text).tokens) {
    if (t.kind != TokenKind::Word) continue;
    if (auto it = words_.find(to_lower_ascii(t.surface)); it != words_.end()) {
      hits[it->second] += 1;
      total += 1;
    }
  }
  EmotionDist d;
  if (total == 0) {
    d.scores.fill(1.0 / static_cast<double>(kEmotionCount));
    d.low_confidence = true;
    return d;
  }
  for (std::size_t i = 0; i < kEmotionCount; ++i) d.scores[i] = hits[i] / total;
  return d;
}

std::vector<EmotionDist> LexiconEmotionProvider::classify(const std::vector<std::string>& texts) {
  std::vector<EmotionDist> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(classify_one(t));
  return out;
}

RemoteEmotionProvider::RemoteEmotionProvider(RemoteEmotionOptions options) : options_(std::move(options)) {
  if (options_.batch_size == 0) options_.batch_size = 1;
  if (options_.max_in_flight == 0) options_.max_in_flight = 1;
  if (options_.cassette && std::filesystem::exists(*options_.cassette)) {
    std::istringstream in(read_file(*options_.cassette));
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (is_blank(line)) continue;
      try {
        const auto rec = json::parse(line);
        cassette_[rec.at("request_hash").get<std::string>()] = rec.at("response").dump();
      } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError,
                    options_.cassette->string() + ":" + std::to_string(line_no) + ": " + e.what());
      }
    }
  }
}

std::string RemoteEmotionProvider::request_body(const std::vector<std::string>& texts) {
  json req;
  req["texts"] = texts;
  return req.dump();
}

std::string RemoteEmotionProvider::request_hash(const std::string& body) { return fnv1a_hex(body); }

std::vector<EmotionDist> RemoteEmotionProvider::parse_response(std::string_view body, std::size_t expected) {
  std::vector<EmotionDist> out;
  try {
    const auto doc = json::parse(body);
    if (!doc.is_array() || doc.size() != expected)
      throw Error(ErrorKind::MalformedResponse, "expected an array of " + std::to_string(expected) + " results");
    for (const auto& item : doc) {
      const auto& scores = item.at("scores");
      EmotionDist d;
      double sum = 0;
      for (std::size_t i = 0; i < kEmotionCount; ++i) {
        const double v = scores.at(std::string(kEmotionLabels[i])).get<double>();
        if (!std::isfinite(v) || v < 0) throw Error(ErrorKind::MalformedResponse, "negative or non-finite score");
        d.scores[i] = v;
        sum += v;
      }
      if (std::abs(sum - 1.0) > 1e-3)
        throw Error(ErrorKind::MalformedResponse, "scores sum to " + format_double(sum));
      for (auto& v : d.scores) v /= sum;
      out.push_back(d);
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::MalformedResponse, e.what());
  }
  return out;
}

std::string RemoteEmotionProvider::post(const std::string& body) {
  if (options_.url.empty())
    throw Error(ErrorKind::ProviderUnavailable, "request " + request_hash(body) + " not in cassette and no URL set");
  httplib::Client client(options_.url);
  const auto timeout = std::chrono::milliseconds(options_.timeout_ms);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);
  std::string last_error = "no attempt";
  for (int attempt = 0; attempt <= options_.retries; ++attempt) {
    if (attempt > 0) std::this_thread::sleep_for(std::chrono::milliseconds(50 << attempt));
    auto res = client.Post("/classify", body, "application/json");
    if (!res) {
      last_error = httplib::to_string(res.error());
      continue;
    }
    if (res->status >= 500) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) throw Error(ErrorKind::ProviderUnavailable, "HTTP " + std::to_string(res->status));
    return res->body;
  }
  throw Error(ErrorKind::ProviderUnavailable, "emotion endpoint failed after retries: " + last_error);
}

std::vector<EmotionDist> RemoteEmotionProvider::classify_batch(const std::vector<std::string>& texts) {
  const std::string body = request_body(texts);
  const std::string hash = request_hash(body);
  {
    std::lock_guard lock(cassette_mutex_);
    if (auto it = cassette_.find(hash); it != cassette_.end()) return parse_response(it->second, texts.size());
  }
  const std::string response = post(body);
  auto dists = parse_response(response, texts.size());
  std::lock_guard lock(cassette_mutex_);
  if (options_.cassette && !cassette_.contains(hash)) {
    json rec;
    rec["request_hash"] = hash;
    rec["response"] = json::parse(response);
    std::ofstream out(*options_.cassette, std::ios::app);
    out << rec.dump() << '\n';
  }
  cassette_.emplace(hash, json::parse(response).dump());
  return dists;
}

std::vector<EmotionDist> RemoteEmotionProvider::classify(const std::vector<std::string>& texts) {
  const std::size_t batches = (texts.size() + options_.batch_size - 1) / options_.batch_size;
  std::vector<std::vector<EmotionDist>> results(batches);
  parallel_for(batches, static_cast<unsigned>(options_.max_in_flight), [&](std::size_t b) {
    const std::size_t begin = b * options_.batch_size;
    const std::size_t end = std::min(texts.size(), begin + options_.batch_size);
    results[b] = classify_batch(std::vector<std::string>(texts.begin() + static_cast<std::ptrdiff_t>(begin),
                                                         texts.begin() + static_cast<std::ptrdiff_t>(end)));
  });
  std::vector<EmotionDist> out;
  out.reserve(texts.size());
  for (auto& r : results) out.insert(out.end(), r.begin(), r.end());
  return out;
}

EmotionTable emotion_table(const std::array<std::vector<EmotionDist>, 4>& populations) {
  EmotionTable table;
  for (std::size_t p = 0; p < 4; ++p) {
    const auto& dists = populations[p];
    table.n[p] = dists.size();
    if (dists.empty()) continue;
    std::array<std::size_t, kEmotionCount> counts{};
    for (const auto& d : dists) ++counts[d.argmax()];
    std::array<double, kEmotionCount> pct{};
    for (std::size_t i = 0; i < kEmotionCount; ++i)
      pct[i] = 100.0 * static_cast<double>(counts[i]) / static_cast<double>(dists.size());
    table.percent[p] = pct;
  }
  return table;
}

EmotionTable emotion_table(const std::array<std::vector<std::string>, 4>& population_texts,
                           EmotionProvider& provider) {
  std::array<std::vector<EmotionDist>, 4> dists;
  for (std::size_t p = 0; p < 4; ++p) dists[p] = provider.classify(population_texts[p]);
  return emotion_table(dists);
}

}  // namespace rumourlens
