#include "rumourlens/senticnet.hpp"

#include <chrono>
#include <cmath>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "rumourlens/error.hpp"
#include "rumourlens/util.hpp"

using nlohmann::json;

namespace rumourlens {

namespace {

void check_range(const std::string& concept_name, const SenticValues& v) {
  for (double x : {v.pleasantness, v.attention, v.sensitivity, v.aptitude, v.polarity}) {
    if (!std::isfinite(x) || x < -1.0 || x > 1.0)
      throw Error(ErrorKind::OutOfRange, "concept '" + concept_name + "' has value outside [-1, 1]");
  }
}

}  // namespace

SenticTable SenticTable::parse_csv(std::string_view csv_text) {
  SenticTable table;
  std::istringstream in{std::string(csv_text)};
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_blank(line)) continue;
    const std::string where = "sentic csv line " + std::to_string(line_no);
    if (!header_seen) {
      if (trim(line) != kSenticCsvHeader) throw Error(ErrorKind::ParseError, where + ": unexpected header");
      header_seen = true;
      continue;
    }
    const auto fields = csv_parse_line(line);
    if (fields.size() != 6) throw Error(ErrorKind::ParseError, where + ": expected 6 fields");
    std::string concept_name = to_lower_ascii(trim(fields[0]));
    if (concept_name.empty()) throw Error(ErrorKind::ParseError, where + ": empty concept");
    double vals[5];
    for (int k = 0; k < 5; ++k) {
      auto v = parse_double(fields[static_cast<std::size_t>(k + 1)]);
      if (!v) throw Error(ErrorKind::ParseError, where + ": bad number '" + fields[static_cast<std::size_t>(k + 1)] + "'");
      vals[k] = *v;
    }
    try {
      table.insert(concept_name, {vals[0], vals[1], vals[2], vals[3], vals[4]});
    } catch (const Error& e) {
      throw Error(e.kind(), where + ": " + e.what());
    }
  }
  if (!header_seen) throw Error(ErrorKind::ParseError, "sentic csv: missing header");
  return table;
}

SenticTable SenticTable::load(const std::filesystem::path& path) { return parse_csv(read_file(path)); }

std::string SenticTable::to_csv() const {
  std::string out(kSenticCsvHeader);
  out += '\n';
  for (const auto& [c, v] : entries_) {
    out += csv_row({c, format_double(v.pleasantness), format_double(v.attention), format_double(v.sensitivity),
                    format_double(v.aptitude), format_double(v.polarity)});
  }
  return out;
}

void SenticTable::save(const std::filesystem::path& path) const { write_file(path, to_csv()); }

void SenticTable::insert(const std::string& concept_name, const SenticValues& values) {
  check_range(concept_name, values);
  if (!entries_.emplace(concept_name, values).second)
    throw Error(ErrorKind::DuplicateConcept, "duplicate concept '" + concept_name + "'");
}

const SenticValues* SenticTable::find(std::string_view concept_name) const {
  auto it = entries_.find(concept_name);
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<std::string> match_concepts(const std::vector<std::string>& lemmas, const SenticTable& table) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < lemmas.size()) {
    bool matched = false;
    for (std::size_t n = std::min(kMaxPhraseWords, lemmas.size() - i); n >= 1; --n) {
      std::string phrase = lemmas[i];
      for (std::size_t k = 1; k < n; ++k) phrase += "_" + lemmas[i + k];
      if (table.contains(phrase)) {
        out.push_back(std::move(phrase));
        i += n;
        matched = true;
        break;
      }
    }
    if (!matched) ++i;
  }
  return out;
}

SenticFeatures sentic_features(const std::vector<std::string>& lemmas, const SenticTable& table) {
  SenticFeatures f;
  const auto concepts = match_concepts(lemmas, table);
  f.matched_concept_count = concepts.size();
  if (concepts.empty()) return f;
  SenticValues sum;
  for (const auto& c : concepts) {
    const auto* v = table.find(c);
    sum.pleasantness += v->pleasantness;
    sum.attention += v->attention;
    sum.sensitivity += v->sensitivity;
    sum.aptitude += v->aptitude;
    sum.polarity += v->polarity;
  }
  const double n = static_cast<double>(concepts.size());
  f.values = SenticValues{sum.pleasantness / n, sum.attention / n, sum.sensitivity / n, sum.aptitude / n,
                          sum.polarity / n};
  return f;
}

SenticValues fetch_sentic_concept(const SenticFetchOptions& options, const std::string& concept_name) {
  httplib::Client client(options.base_url);
  const auto timeout = std::chrono::milliseconds(options.timeout_ms);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  const std::string path = "/api/en/" + httplib::detail::encode_url(concept_name);
  std::string last_error = "no attempt";
  for (int attempt = 0; attempt <= options.retries; ++attempt) {
    if (attempt > 0) std::this_thread::sleep_for(std::chrono::milliseconds(50 << attempt));
    auto res = client.Get(path);
    if (!res) {
      last_error = httplib::to_string(res.error());
      continue;
    }
    if (res->status >= 500) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200)
      throw Error(ErrorKind::ProviderUnavailable, "sentic fetch '" + concept_name + "': HTTP " + std::to_string(res->status));
    try {
      const auto doc = json::parse(res->body);
      SenticValues v{doc.at("pleasantness").get<double>(), doc.at("attention").get<double>(),
                     doc.at("sensitivity").get<double>(), doc.at("aptitude").get<double>(),
                     doc.at("polarity").get<double>()};
      check_range(concept_name, v);
      return v;
    } catch (const json::exception& e) {
      throw Error(ErrorKind::MalformedResponse, "sentic fetch '" + concept_name + "': " + e.what());
    } catch (const Error& e) {
      throw Error(ErrorKind::MalformedResponse, e.what());
    }
  }
  throw Error(ErrorKind::ProviderUnavailable, "sentic fetch '" + concept_name + "': " + last_error);
}

std::size_t fetch_missing_concepts(const SenticFetchOptions& options, const std::vector<std::string>& concepts,
                                   SenticTable& table) {
  std::size_t added = 0;
  for (const auto& raw : concepts) {
    std::string c = to_lower_ascii(trim(raw));
    for (auto& ch : c)
      if (ch == ' ') ch = '_';
    if (c.empty() || table.contains(c)) continue;
    table.insert(c, fetch_sentic_concept(options, c));
    ++added;
  }
  return added;
}

}  // namespace rumourlens
