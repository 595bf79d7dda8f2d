#include "rumourlens/readability.hpp"

#include <cmath>

#include "rumourlens/error.hpp"

namespace rumourlens {

namespace {

void require_text(const TextStats& s) {
  if (s.words == 0 || s.sentences == 0) throw Error(ErrorKind::EmptyText, "readability needs words and sentences");
}

double words_per_sentence(const TextStats& s) {
  return static_cast<double>(s.words) / static_cast<double>(s.sentences);
}

double per_word(std::size_t count, const TextStats& s) {
  return static_cast<double>(count) / static_cast<double>(s.words);
}

}  // namespace

double flesch(const TextStats& s) {
  require_text(s);
  return 206.835 - 1.015 * words_per_sentence(s) - 84.6 * per_word(s.syllables, s);
}

double flesch_kincaid(const TextStats& s) {
  require_text(s);
  return 0.39 * words_per_sentence(s) + 11.8 * per_word(s.syllables, s) - 15.59;
}

double gunning_fog(const TextStats& s) {
  require_text(s);
  return 0.4 * (words_per_sentence(s) + 100.0 * per_word(s.complex_words, s));
}

double smog(const TextStats& s) {
  require_text(s);
  return 1.0430 * std::sqrt(static_cast<double>(s.polysyllables) * 30.0 / static_cast<double>(s.sentences)) +
         3.1291;
}

double dale_chall(const TextStats& s) {
  require_text(s);
  const double difficult = per_word(s.difficult_words, s);
  double score = 0.1579 * (100.0 * difficult) + 0.0496 * words_per_sentence(s);
  if (difficult > 0.05) score += 3.6365;
  return score;
}

ReadabilityScores readability(const TextStats& s) {
  return {flesch(s), flesch_kincaid(s), gunning_fog(s), smog(s), dale_chall(s)};
}

std::optional<ReadabilityScores> readability_of(std::string_view raw_text, const EasyWordList& easy_words) {
  const std::string cleaned = clean_for_readability(raw_text);
  try {
    return readability(text_stats(cleaned, easy_words));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::EmptyText) return std::nullopt;
    throw;
  }
}

}  // namespace rumourlens
