#include "rumourlens/lexicon.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <json.hpp>

#include "rumourlens/error.hpp"
#include "rumourlens/util.hpp"

using nlohmann::json;

namespace rumourlens {

namespace {

LexiconMetric parse_metric(const std::string& s, const std::string& key) {
  if (s == "word_count") return LexiconMetric::WordCount;
  if (s == "all_punct") return LexiconMetric::AllPunct;
  if (s == "words_per_sentence") return LexiconMetric::WordsPerSentence;
  if (s == "six_letter_words") return LexiconMetric::SixLetterWords;
  if (s == "dictionary_words") return LexiconMetric::DictionaryWords;
  throw Error(ErrorKind::ParseError, "category '" + key + "': unknown metric '" + s + "'");
}

void check_pattern(const std::string& p, const std::string& key) {
  if (p.empty()) throw Error(ErrorKind::BadPattern, "category '" + key + "': empty pattern");
  const auto star = p.find('*');
  if (star != std::string::npos && star != p.size() - 1)
    throw Error(ErrorKind::BadPattern, "category '" + key + "': '*' must be terminal in '" + p + "'");
}

std::string normalize_word(std::string_view surface) {
  std::string w = to_lower_ascii(surface);
  for (std::size_t p; (p = w.find("\xE2\x80\x99")) != std::string::npos;) w.replace(p, 3, "'");
  return w;
}

std::size_t codepoints(std::string_view s) {
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

}  // namespace

bool pattern_matches(std::string_view pattern, std::string_view lower_word) {
  if (!pattern.empty() && pattern.back() == '*') return lower_word.starts_with(pattern.substr(0, pattern.size() - 1));
  return pattern == lower_word;
}

Lexicon Lexicon::from_json_text(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("lexicon: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("categories") || !doc["categories"].is_object())
    throw Error(ErrorKind::ParseError, "lexicon: missing 'categories' object");
  Lexicon lex;
  lex.name_ = doc.value("name", std::string("unnamed"));
  lex.version_ = doc.value("version", std::string(""));
  for (const auto& [key, body] : doc["categories"].items()) {
    if (!body.is_object()) throw Error(ErrorKind::ParseError, "category '" + key + "' is not an object");
    Category c;
    c.key = key;
    c.label = body.value("label", key);
    if (body.contains("parent") && !body["parent"].is_null()) c.parent = body["parent"].get<std::string>();
    if (body.contains("metric")) {
      if (body.contains("patterns"))
        throw Error(ErrorKind::ParseError, "category '" + key + "' has both metric and patterns");
      c.metric = parse_metric(body["metric"].get<std::string>(), key);
    } else {
      if (!body.contains("patterns") || !body["patterns"].is_array() || body["patterns"].empty())
        throw Error(ErrorKind::EmptyCategory, "category '" + key + "' has no patterns");
      for (const auto& p : body["patterns"]) {
        if (!p.is_string()) throw Error(ErrorKind::BadPattern, "category '" + key + "': non-string pattern");
        auto pattern = to_lower_ascii(p.get<std::string>());
        check_pattern(pattern, key);
        c.patterns.push_back(std::move(pattern));
      }
    }
    lex.categories_.push_back(std::move(c));
  }
  std::sort(lex.categories_.begin(), lex.categories_.end(),
            [](const Category& a, const Category& b) { return a.key < b.key; });

  for (const auto& c : lex.categories_) {
    std::set<std::string> seen{c.key};
    std::optional<std::string> cur = c.parent;
    while (cur) {
      auto idx = lex.index_of(*cur);
      if (!idx) throw Error(ErrorKind::ParseError, "category '" + c.key + "': unknown parent '" + *cur + "'");
      if (!seen.insert(*cur).second)
        throw Error(ErrorKind::CycleError, "parent cycle through category '" + c.key + "'");
      cur = lex.categories_[*idx].parent;
    }
  }
  lex.compile();
  return lex;
}

Lexicon Lexicon::load(const std::filesystem::path& path) { return from_json_text(read_file(path)); }

std::size_t Lexicon::top_level_count() const {
  return static_cast<std::size_t>(
      std::count_if(categories_.begin(), categories_.end(), [](const Category& c) { return !c.parent; }));
}

std::optional<std::size_t> Lexicon::index_of(std::string_view key) const {
  auto it = std::lower_bound(categories_.begin(), categories_.end(), key,
                             [](const Category& c, std::string_view k) { return c.key < k; });
  if (it == categories_.end() || it->key != key) return std::nullopt;
  return static_cast<std::size_t>(it - categories_.begin());
}

void Lexicon::compile() {
  for (std::size_t i = 0; i < categories_.size(); ++i) {
    for (const auto& p : categories_[i].patterns) {
      if (p.back() == '*') {
        auto stem = p.substr(0, p.size() - 1);
        max_stem_length_ = std::max(max_stem_length_, stem.size());
        stems_[stem].push_back(i);
      } else {
        literals_[p].push_back(i);
      }
    }
  }
}

std::vector<std::size_t> Lexicon::match(std::string_view lower_word) const {
  std::vector<std::size_t> hits;
  if (auto it = literals_.find(std::string(lower_word)); it != literals_.end())
    hits.insert(hits.end(), it->second.begin(), it->second.end());
  const std::size_t longest = std::min(max_stem_length_, lower_word.size());
  for (std::size_t len = 0; len <= longest; ++len) {
    if (auto it = stems_.find(std::string(lower_word.substr(0, len))); it != stems_.end())
      hits.insert(hits.end(), it->second.begin(), it->second.end());
  }
  std::sort(hits.begin(), hits.end());
  hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
  return hits;
}

CategoryProfile score(const TokenStream& tokens, const Lexicon& lexicon) {
  const auto& cats = lexicon.categories();
  std::vector<std::size_t> counts(cats.size(), 0);
  std::size_t words = 0;
  std::size_t dictionary_words = 0;
  std::size_t six_letter = 0;
  std::map<std::string, std::size_t> punct;
  for (const auto& key : punctuation_keys()) punct[key] = 0;

  for (const auto& t : tokens.tokens) {
    if (t.kind == TokenKind::Word) {
      ++words;
      const auto w = normalize_word(t.surface);
      if (codepoints(w) > 6) ++six_letter;
      const auto hits = lexicon.match(w);
      if (!hits.empty()) ++dictionary_words;
      for (auto i : hits) ++counts[i];
      const auto apostrophes = static_cast<std::size_t>(std::count(w.begin(), w.end(), '\''));
      punct["apostrophe"] += apostrophes;
      punct["all_punct"] += apostrophes;
    } else if (t.kind == TokenKind::Punctuation) {
      ++punct["all_punct"];
      const auto& s = t.surface;
      if (s == ".") ++punct["period"];
      else if (s == ",") ++punct["comma"];
      else if (s == ";") ++punct["semicolon"];
      else if (s == "?") ++punct["question"];
      else if (s == "!") ++punct["exclam"];
      else if (s == "'" || s == "\xE2\x80\x99") ++punct["apostrophe"];
      else if (s == "(" || s == ")") ++punct["parenthesis"];
    }
  }

  CategoryProfile profile;
  profile.word_count = words;
  const bool empty = words == 0;
  const double wc = static_cast<double>(words);
  auto pct = [&](std::size_t n) -> std::optional<double> {
    if (empty) return std::nullopt;
    return 100.0 * static_cast<double>(n) / wc;
  };
  for (std::size_t i = 0; i < cats.size(); ++i) {
    std::optional<double> value;
    switch (cats[i].metric) {
      case LexiconMetric::None: value = pct(counts[i]); break;
      case LexiconMetric::WordCount:
        if (!empty) value = wc;
        break;
      case LexiconMetric::AllPunct: value = pct(punct["all_punct"]); break;
      case LexiconMetric::WordsPerSentence:
        if (!empty) value = wc / static_cast<double>(std::max<std::size_t>(1, count_sentences(tokens)));
        break;
      case LexiconMetric::SixLetterWords: value = pct(six_letter); break;
      case LexiconMetric::DictionaryWords: value = pct(dictionary_words); break;
    }
    profile.categories[cats[i].key] = value;
  }
  for (const auto& [key, n] : punct) profile.punctuation[key] = pct(n);
  return profile;
}

PopulationProfile profile_population(const std::vector<std::string>& texts, const Lexicon& lexicon) {
  PopulationProfile pop;
  for (const auto& c : lexicon.categories()) pop.samples[c.key];
  for (const auto& key : punctuation_keys()) pop.samples["punct." + key];
  for (const auto& text : texts) {
    const auto profile = score(tokenize(text), lexicon);
    for (const auto& [key, v] : profile.categories)
      if (v) pop.samples[key].push_back(*v);
    for (const auto& [key, v] : profile.punctuation)
      if (v) pop.samples["punct." + key].push_back(*v);
  }
  for (const auto& [key, xs] : pop.samples) {
    pop.means[key] = xs.empty() ? std::nullopt : std::optional<double>(mean(xs));
  }
  return pop;
}

std::string convert_liwc_dic(std::string_view dic_text, std::string_view name) {
  std::istringstream in{std::string(dic_text)};
  std::string line;
  std::size_t line_no = 0;
  int percent_lines = 0;
  struct HeaderEntry {
    std::string name;
    std::string label;
    std::optional<std::string> parent_id;
  };
  std::map<std::string, HeaderEntry> header;
  std::vector<std::string> header_order;
  std::map<std::string, std::vector<std::string>> patterns;  // category id -> patterns
  auto fail = [&](ErrorKind kind, const std::string& msg) {
    throw Error(kind, "dic line " + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view v = trim(line);
    if (v.empty()) continue;
    if (v == "%") {
      ++percent_lines;
      continue;
    }
    std::istringstream fields{std::string(v)};
    std::vector<std::string> parts;
    for (std::string f; fields >> f;) parts.push_back(f);
    if (percent_lines == 1) {
      if (parts.size() < 2) fail(ErrorKind::ParseError, "header line needs '<id> <name>'");
      HeaderEntry e{parts[1], parts[1], std::nullopt};
      for (std::size_t k = 2; k < parts.size(); ++k) {
        const auto& f = parts[k];
        if (f.front() == '(') {
          std::string label;
          for (std::size_t m = k; m < parts.size(); ++m) label += (m > k ? " " : "") + parts[m];
          e.label = label.substr(1, label.size() - (label.back() == ')' ? 2 : 1));
          break;
        }
        if (!std::all_of(f.begin(), f.end(), [](char c) { return c >= '0' && c <= '9'; }))
          fail(ErrorKind::ParseError, "expected parent id, got '" + f + "'");
        e.parent_id = f;
      }
      if (header.contains(parts[0])) fail(ErrorKind::ParseError, "duplicate category id " + parts[0]);
      header_order.push_back(parts[0]);
      header.emplace(parts[0], std::move(e));
    } else if (percent_lines >= 2) {
      const std::string pattern = to_lower_ascii(parts[0]);
      const auto star = pattern.find('*');
      if (star != std::string::npos && star != pattern.size() - 1)
        fail(ErrorKind::BadPattern, "'*' must be terminal in '" + pattern + "'");
      if (parts.size() < 2) fail(ErrorKind::ParseError, "word '" + pattern + "' has no category ids");
      for (std::size_t k = 1; k < parts.size(); ++k) {
        const auto& id = parts[k];
        if (!std::all_of(id.begin(), id.end(), [](char c) { return c >= '0' && c <= '9'; }))
          fail(ErrorKind::ParseError, "unsupported category reference '" + id + "'");
        if (!header.contains(id)) fail(ErrorKind::ParseError, "unknown category id " + id);
        patterns[id].push_back(pattern);
      }
    } else {
      fail(ErrorKind::ParseError, "content before the '%' header block");
    }
  }
  if (percent_lines < 2) throw Error(ErrorKind::ParseError, "dic: header block must be enclosed by two '%' lines");

  json cats = json::object();
  for (const auto& id : header_order) {
    const auto& e = header.at(id);
    json body;
    body["label"] = e.label;
    if (e.parent_id) {
      auto it = header.find(*e.parent_id);
      if (it == header.end()) throw Error(ErrorKind::ParseError, "dic: unknown parent id " + *e.parent_id);
      body["parent"] = it->second.name;
    }
    auto& ps = patterns[id];
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    if (ps.empty()) throw Error(ErrorKind::EmptyCategory, "dic: category '" + e.name + "' has no words");
    body["patterns"] = ps;
    cats[e.name] = body;
  }
  json doc;
  doc["name"] = std::string(name);
  doc["version"] = "converted-from-dic";
  doc["categories"] = cats;
  return doc.dump(1) + "\n";
}

}  // namespace rumourlens
