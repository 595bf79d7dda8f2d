#pragma once

#include <optional>
#include <string_view>

#include "rumourlens/textprep.hpp"

namespace rumourlens {

// Unclamped; Flesch can exceed 100 or go negative on degenerate posts.
struct ReadabilityScores {
  double flesch = 0;
  double flesch_kincaid = 0;
  double gunning_fog = 0;
  double smog = 0;
  double dale_chall = 0;
};

// Each formula throws Error{EmptyText} when words or sentences is zero.

// 206.835 - 1.015 (words/sentences) - 84.6 (syllables/words)
double flesch(const TextStats& stats);
// 0.39 (words/sentences) + 11.8 (syllables/words) - 15.59
double flesch_kincaid(const TextStats& stats);
// 0.4 [(words/sentences) + 100 (complex/words)]
double gunning_fog(const TextStats& stats);
// 1.0430 sqrt(polysyllables * 30 / sentences) + 3.1291
double smog(const TextStats& stats);
// 0.1579 (100 difficult/words) + 0.0496 (words/sentences), + 3.6365 when
// more than 5% of words are difficult
double dale_chall(const TextStats& stats);

ReadabilityScores readability(const TextStats& stats);

// Cleans the text for readability first; nullopt when no words survive.
std::optional<ReadabilityScores> readability_of(std::string_view raw_text, const EasyWordList& easy_words);

}  // namespace rumourlens
