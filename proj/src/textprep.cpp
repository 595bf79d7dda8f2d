#include "rumourlens/textprep.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>

#include "rumourlens/error.hpp"
#include "rumourlens/util.hpp"

namespace rumourlens {

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Word: return "Word";
    case TokenKind::Punctuation: return "Punctuation";
    case TokenKind::Hashtag: return "Hashtag";
    case TokenKind::Mention: return "Mention";
    case TokenKind::Url: return "Url";
    case TokenKind::Emoji: return "Emoji";
    case TokenKind::Number: return "Number";
  }
  return "Unknown";
}

std::size_t TokenStream::count(TokenKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(tokens.begin(), tokens.end(), [kind](const Token& t) { return t.kind == kind; }));
}

namespace {

struct Decoded {
  char32_t cp;
  std::size_t len;
};

Decoded decode(std::string_view s, std::size_t i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) return {b0, 1};
  auto cont = [&](std::size_t k) {
    return i + k < s.size() && (static_cast<unsigned char>(s[i + k]) & 0xC0) == 0x80;
  };
  auto byte = [&](std::size_t k) { return static_cast<char32_t>(static_cast<unsigned char>(s[i + k]) & 0x3F); };
  if ((b0 & 0xE0) == 0xC0 && cont(1)) return {(static_cast<char32_t>(b0 & 0x1F) << 6) | byte(1), 2};
  if ((b0 & 0xF0) == 0xE0 && cont(1) && cont(2))
    return {(static_cast<char32_t>(b0 & 0x0F) << 12) | (byte(1) << 6) | byte(2), 3};
  if ((b0 & 0xF8) == 0xF0 && cont(1) && cont(2) && cont(3))
    return {(static_cast<char32_t>(b0 & 0x07) << 18) | (byte(1) << 12) | (byte(2) << 6) | byte(3), 4};
  return {0xFFFD, 1};
}

bool is_space(char32_t cp) {
  return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\f' || cp == '\v' ||
         cp == 0x00A0 || (cp >= 0x2000 && cp <= 0x200B) || cp == 0x3000 || cp == 0x202F;
}

bool is_emoji(char32_t cp) {
  return (cp >= 0x2600 && cp <= 0x27BF) ||    // misc symbols, dingbats
         (cp >= 0x1F300 && cp <= 0x1F5FF) ||  // misc symbols and pictographs
         (cp >= 0x1F600 && cp <= 0x1F64F) ||  // emoticons
         (cp >= 0x1F680 && cp <= 0x1F6FF) ||  // transport and map
         (cp >= 0x1F900 && cp <= 0x1F9FF) ||  // supplemental symbols and pictographs
         (cp >= 0x1FA70 && cp <= 0x1FAFF) ||  // symbols and pictographs extended-A
         (cp >= 0x1F1E6 && cp <= 0x1F1FF);    // regional indicators
}

bool is_emoji_modifier(char32_t cp) {
  return cp == 0xFE0F || cp == 0xFE0E || cp == 0x20E3 || (cp >= 0x1F3FB && cp <= 0x1F3FF);
}

bool is_ascii_letter(char32_t cp) { return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z'); }
bool is_digit(char32_t cp) { return cp >= '0' && cp <= '9'; }
bool is_apostrophe(char32_t cp) { return cp == '\'' || cp == 0x2019; }

bool is_letter(char32_t cp) {
  if (is_ascii_letter(cp)) return true;
  if (cp < 0xC0) return false;  // ASCII and Latin-1 punctuation/symbols
  if (cp == 0xD7 || cp == 0xF7 || cp == 0xFFFD) return false;
  if (cp >= 0x2000 && cp <= 0x2BFF) return false;  // punctuation, arrows, symbols
  if (cp >= 0x3000 && cp <= 0x303F) return false;
  if (cp >= 0xFE00 && cp <= 0xFE0F) return false;
  if (is_emoji(cp) || is_emoji_modifier(cp) || cp == 0x200D) return false;
  return true;
}

bool is_word_char(char32_t cp) { return is_letter(cp) || is_digit(cp) || cp == '_'; }

// Length of a "scheme://" prefix at i, or "www." followed by something.
std::size_t url_prefix(std::string_view s, std::size_t i) {
  std::size_t j = i;
  if (j < s.size() && is_ascii_letter(static_cast<unsigned char>(s[j]))) {
    while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '+' || s[j] == '-' ||
                            s[j] == '.'))
      ++j;
    if (s.substr(j, 3) == "://") return j + 3 - i;
  }
  if (s.size() - i > 4 && to_lower_ascii(s.substr(i, 4)) == "www." && !is_space(decode(s, i + 4).cp))
    return 4;
  return 0;
}

bool is_trailing_url_punct(char c) {
  return c == '.' || c == ',' || c == '!' || c == '?' || c == ';' || c == ':' || c == ')' || c == ']' ||
         c == '"' || c == '\'';
}

}  // namespace

TokenStream tokenize(std::string_view text) {
  TokenStream out;
  auto emit = [&](std::size_t start, std::size_t end, TokenKind kind) {
    out.tokens.push_back(Token{std::string(text.substr(start, end - start)), kind, start});
  };
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const auto [cp, len] = decode(text, i);
    if (is_space(cp)) {
      i += len;
      continue;
    }
    const bool boundary = i == 0 || !is_word_char(decode(text, i - 1).cp);
    if (boundary) {
      if (url_prefix(text, i) > 0) {
        std::size_t j = i;
        while (j < n && !is_space(decode(text, j).cp)) j += decode(text, j).len;
        std::size_t end = j;
        while (end > i + 1 && is_trailing_url_punct(text[end - 1])) --end;
        emit(i, end, TokenKind::Url);
        for (std::size_t k = end; k < j; ++k) emit(k, k + 1, TokenKind::Punctuation);
        i = j;
        continue;
      }
    }
    if ((cp == '#' || cp == '@') && i + 1 < n) {
      const auto next = decode(text, i + 1);
      const bool ok = cp == '#' ? is_word_char(next.cp)
                                : (next.cp < 0x80 && (std::isalnum(static_cast<int>(next.cp)) || next.cp == '_'));
      if (ok) {
        std::size_t j = i + 1;
        while (j < n) {
          const auto d = decode(text, j);
          const bool keep = cp == '#' ? is_word_char(d.cp)
                                      : (d.cp < 0x80 && (std::isalnum(static_cast<int>(d.cp)) || d.cp == '_'));
          if (!keep) break;
          j += d.len;
        }
        emit(i, j, cp == '#' ? TokenKind::Hashtag : TokenKind::Mention);
        i = j;
        continue;
      }
    }
    if (is_emoji(cp)) {
      std::size_t j = i + len;
      while (j < n) {
        const auto d = decode(text, j);
        if (is_emoji_modifier(d.cp)) {
          j += d.len;
        } else if (d.cp == 0x200D && j + d.len < n && is_emoji(decode(text, j + d.len).cp)) {
          j += d.len + decode(text, j + d.len).len;
        } else if (cp >= 0x1F1E6 && cp <= 0x1F1FF && d.cp >= 0x1F1E6 && d.cp <= 0x1F1FF && j == i + len) {
          j += d.len;  // flag pair
        } else {
          break;
        }
      }
      emit(i, j, TokenKind::Emoji);
      i = j;
      continue;
    }
    if (is_digit(cp)) {
      std::size_t j = i + 1;
      while (j < n) {
        if (is_digit(static_cast<unsigned char>(text[j]))) {
          ++j;
        } else if ((text[j] == '.' || text[j] == ',' || text[j] == ':') && j + 1 < n &&
                   is_digit(static_cast<unsigned char>(text[j + 1]))) {
          j += 2;
        } else {
          break;
        }
      }
      emit(i, j, TokenKind::Number);
      i = j;
      continue;
    }
    if (is_letter(cp)) {
      std::size_t j = i + len;
      while (j < n) {
        const auto d = decode(text, j);
        if (is_letter(d.cp)) {
          j += d.len;
        } else if (is_apostrophe(d.cp) && j + d.len < n && is_letter(decode(text, j + d.len).cp)) {
          j += d.len;
        } else {
          break;
        }
      }
      emit(i, j, TokenKind::Word);
      i = j;
      continue;
    }
    emit(i, i + len, TokenKind::Punctuation);
    i += len;
  }
  return out;
}

int count_syllables(std::string_view word) {
  std::string w;
  for (char c : word) {
    if (c >= 'A' && c <= 'Z') w += static_cast<char>(c - 'A' + 'a');
    else if (c >= 'a' && c <= 'z') w += c;
  }
  const auto vowel = [](char c) {
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
  };
  int groups = 0;
  bool in_group = false;
  for (char c : w) {
    if (vowel(c)) {
      if (!in_group) ++groups;
      in_group = true;
    } else {
      in_group = false;
    }
  }
  const std::size_t n = w.size();
  if (groups > 1 && n > 0 && w[n - 1] == 'e') {
    const bool consonant_le = n > 2 && w[n - 2] == 'l' && !vowel(w[n - 3]);
    if (!consonant_le) --groups;
  }
  return std::max(1, groups);
}

namespace {

std::string normalize_spacing(std::string_view s) {
  std::string collapsed;
  bool pending_space = false;
  for (std::size_t i = 0; i < s.size();) {
    const auto [cp, len] = decode(s, i);
    if (is_space(cp)) {
      pending_space = !collapsed.empty();
    } else {
      const char c = s[i];
      const bool closing = len == 1 && (c == '.' || c == ',' || c == '!' || c == '?' || c == ';' || c == ':');
      if (pending_space && !closing) collapsed += ' ';
      pending_space = false;
      collapsed.append(s.substr(i, len));
    }
    i += len;
  }
  return collapsed;
}

std::string strip_markup_once(std::string_view text) {
  const auto ts = tokenize(text);
  std::string out;
  std::size_t cursor = 0;
  for (const auto& t : ts.tokens) {
    if (t.kind == TokenKind::Hashtag || t.kind == TokenKind::Mention || t.kind == TokenKind::Url ||
        t.kind == TokenKind::Emoji) {
      out.append(text.substr(cursor, t.offset - cursor));
      out += ' ';
      cursor = t.offset + t.surface.size();
    }
  }
  out.append(text.substr(cursor));
  return normalize_spacing(out);
}

}  // namespace

std::string clean_for_readability(std::string_view text) {
  std::string cur(text);
  // Removing a span can expose new markup ("ww😀w." becomes "www."), so run
  // to a fixpoint.
  for (int round = 0; round < 16; ++round) {
    std::string next = strip_markup_once(cur);
    if (next == cur) break;
    cur = std::move(next);
  }
  return cur;
}

RuleLemmatizer RuleLemmatizer::from_file(const std::filesystem::path& path) {
  std::unordered_map<std::string, std::string> table;
  std::istringstream in(read_file(path));
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view v = trim(line);
    if (v.empty() || v.front() == '#') continue;
    const auto parts = split(v, '\t');
    if (parts.size() < 2)
      throw Error(ErrorKind::ParseError, path.string() + ":" + std::to_string(line_no) + ": expected form<TAB>lemma");
    table.emplace(to_lower_ascii(trim(parts[0])), to_lower_ascii(trim(parts[1])));
  }
  return RuleLemmatizer(std::move(table));
}

namespace {

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

bool has_vowel(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](char c) { return is_vowel(c) || c == 'y'; });
}

int vowel_groups(std::string_view s) {
  int groups = 0;
  bool in = false;
  for (char c : s) {
    const bool v = is_vowel(c) || c == 'y';
    if (v && !in) ++groups;
    in = v;
  }
  return groups;
}

// Repairs a stem left behind by -ing/-ed removal.
std::string repair_stem(std::string stem) {
  const std::size_t n = stem.size();
  if (n >= 2 && stem[n - 1] == stem[n - 2] && !is_vowel(stem[n - 1]) && stem[n - 1] != 'l' &&
      stem[n - 1] != 's' && stem[n - 1] != 'z') {
    stem.pop_back();
    return stem;
  }
  if (stem.ends_with("at") || stem.ends_with("iz") || stem.ends_with("bl")) return stem + "e";
  if (n >= 3 && vowel_groups(stem) == 1 && !is_vowel(stem[n - 3]) && is_vowel(stem[n - 2]) &&
      !is_vowel(stem[n - 1]) && stem[n - 1] != 'w' && stem[n - 1] != 'x' && stem[n - 1] != 'y')
    return stem + "e";
  return stem;
}

}  // namespace

std::string RuleLemmatizer::lemma(std::string_view lower_word) const {
  std::string w(lower_word);
  if (auto it = exceptions_.find(w); it != exceptions_.end()) return it->second;
  const std::size_t n = w.size();
  if (n <= 3 || !std::all_of(w.begin(), w.end(), [](char c) { return c >= 'a' && c <= 'z'; })) return w;
  if ((w.ends_with("ies") || w.ends_with("ied")) && n > 4) return w.substr(0, n - 3) + "y";
  if (w.ends_with("sses")) return w.substr(0, n - 2);
  if (w.ends_with("ss") || w.ends_with("us") || w.ends_with("is")) return w;
  if (w.ends_with("ing")) {
    std::string stem = w.substr(0, n - 3);
    if (stem.size() >= 3 && has_vowel(stem)) return repair_stem(std::move(stem));
    return w;
  }
  if (w.ends_with("ed")) {
    std::string stem = w.substr(0, n - 2);
    if (stem.size() >= 3 && has_vowel(stem)) return repair_stem(std::move(stem));
    return w;
  }
  if (w.ends_with("es")) {
    const std::string stem = w.substr(0, n - 2);
    if (stem.ends_with("sh") || stem.ends_with("ch") || stem.ends_with("x") || stem.ends_with("z") ||
        stem.ends_with("s"))
      return stem;
  }
  if (w.ends_with('s')) return w.substr(0, n - 1);
  return w;
}

bool is_negation(std::string_view w) {
  return w == "not" || w == "no" || w == "never" || w == "nor" || w.ends_with("n't") || w.ends_with("n\xE2\x80\x99t") ||
         w == "cannot";
}

StopwordSet::StopwordSet(const std::vector<std::string>& words) {
  for (const auto& w : words) words_.insert(to_lower_ascii(w));
}

StopwordSet StopwordSet::from_file(const std::filesystem::path& path) {
  return StopwordSet(read_word_list(path));
}

bool StopwordSet::contains(std::string_view lower_word) const {
  if (is_negation(lower_word)) return false;
  return words_.contains(std::string(lower_word));
}

std::vector<std::string> clean_for_senticnet(std::string_view text, const StopwordSet& stopwords,
                                             const Lemmatizer& lemmatizer) {
  std::vector<std::string> out;
  auto push = [&](const std::string& w) {
    if (w.empty()) return;
    if (is_negation(w)) {
      out.push_back(w);
      return;
    }
    if (stopwords.contains(w)) return;
    out.push_back(lemmatizer.lemma(w));
  };
  for (const auto& t : tokenize(text).tokens) {
    if (t.kind != TokenKind::Word) continue;
    std::string w = to_lower_ascii(t.surface);
    // Normalize the typographic apostrophe (U+2019) to ASCII.
    for (std::size_t p; (p = w.find("\xE2\x80\x99")) != std::string::npos;) w.replace(p, 3, "'");
    if (w == "cannot") {
      push("can");
      push("not");
      continue;
    }
    if (w.ends_with("n't")) {
      std::string base = w.substr(0, w.size() - 3);
      if (base == "wo") base = "will";
      else if (base == "ca") base = "can";
      else if (base == "sha") base = "shall";
      push(base);
      out.push_back("not");
      continue;
    }
    for (std::string_view clitic : {"'s", "'re", "'ve", "'ll", "'d", "'m"}) {
      if (w.size() > clitic.size() && w.ends_with(clitic)) {
        w.resize(w.size() - clitic.size());
        break;
      }
    }
    push(w);
  }
  return out;
}

EasyWordList::EasyWordList(const std::vector<std::string>& words) {
  for (const auto& w : words) words_.insert(to_lower_ascii(w));
}

EasyWordList EasyWordList::from_file(const std::filesystem::path& path) {
  return EasyWordList(read_word_list(path));
}

bool is_complex_word(std::string_view lower_word) {
  if (count_syllables(lower_word) < 3) return false;
  for (std::string_view suffix : {"es", "ed", "ing"}) {
    if (lower_word.size() > suffix.size() + 1 && lower_word.ends_with(suffix)) {
      const auto stem = lower_word.substr(0, lower_word.size() - suffix.size());
      if (count_syllables(stem) < 3) return false;
    }
  }
  return true;
}

std::size_t count_sentences(const TokenStream& tokens) {
  const auto is_terminator = [](const Token& t) {
    return t.kind == TokenKind::Punctuation && (t.surface == "." || t.surface == "!" || t.surface == "?");
  };
  std::size_t sentences = 0;
  bool segment_has_word = false;
  const auto& ts = tokens.tokens;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const auto& t = ts[k];
    if (t.kind == TokenKind::Word) {
      segment_has_word = true;
      continue;
    }
    if (!is_terminator(t)) continue;
    // Only the last terminator of an adjacent run can close a sentence, and
    // only when whitespace (a gap) or the end of text follows it.
    const std::size_t end = t.offset + t.surface.size();
    const bool last = k + 1 == ts.size();
    if (!last && ts[k + 1].offset == end) continue;
    if (segment_has_word) {
      ++sentences;
      segment_has_word = false;
    }
  }
  if (segment_has_word) ++sentences;
  return sentences;
}

TextStats text_stats(std::string_view text, const EasyWordList& easy_words) {
  const auto tokens = tokenize(text);
  TextStats s;
  for (const auto& t : tokens.tokens) {
    if (t.kind != TokenKind::Word) continue;
    const std::string lower = to_lower_ascii(t.surface);
    const int syl = count_syllables(lower);
    ++s.words;
    s.syllables += static_cast<std::size_t>(syl);
    if (syl >= 3) ++s.polysyllables;
    if (is_complex_word(lower)) ++s.complex_words;
    if (!easy_words.contains(lower)) ++s.difficult_words;
  }
  if (s.words == 0) throw Error(ErrorKind::EmptyText, "no words in text");
  s.sentences = count_sentences(tokens);
  return s;
}

}  // namespace rumourlens
