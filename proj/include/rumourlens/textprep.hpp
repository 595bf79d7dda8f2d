#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace rumourlens {

enum class TokenKind { Word, Punctuation, Hashtag, Mention, Url, Emoji, Number };

std::string_view to_string(TokenKind kind);

struct Token {
  std::string surface;
  TokenKind kind = TokenKind::Word;
  std::size_t offset = 0;  // byte offset into the tokenized text
};

struct TokenStream {
  std::vector<Token> tokens;

  std::size_t count(TokenKind kind) const;
};

// Total: any byte sequence tokenizes. Invalid UTF-8 bytes become punctuation.
TokenStream tokenize(std::string_view text);

// Vowel-group heuristic; at least 1 for any word.
int count_syllables(std::string_view word);

// Drops hashtags, mentions, emojis and URLs while keeping sentence
// punctuation; collapses whitespace. Idempotent.
std::string clean_for_readability(std::string_view text);

class Lemmatizer {
 public:
  virtual ~Lemmatizer() = default;
  virtual std::string lemma(std::string_view lower_word) const = 0;
};

// Suffix stripper backed by a table of irregular forms.
class RuleLemmatizer final : public Lemmatizer {
 public:
  RuleLemmatizer() = default;
  explicit RuleLemmatizer(std::unordered_map<std::string, std::string> exceptions)
      : exceptions_(std::move(exceptions)) {}

  // TSV: form<TAB>lemma, '#' comments.
  static RuleLemmatizer from_file(const std::filesystem::path& path);

  std::string lemma(std::string_view lower_word) const override;
  std::size_t exception_count() const { return exceptions_.size(); }

 private:
  std::unordered_map<std::string, std::string> exceptions_;
};

// not, no, never, nor, and any "n't" contraction.
bool is_negation(std::string_view lower_word);

class StopwordSet {
 public:
  StopwordSet() = default;
  explicit StopwordSet(const std::vector<std::string>& words);
  static StopwordSet from_file(const std::filesystem::path& path);

  // Negations are never stopwords, whatever the list says.
  bool contains(std::string_view lower_word) const;
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

// Lowercased, lemmatized content words with negations preserved; "n't"
// contractions contribute "not".
std::vector<std::string> clean_for_senticnet(std::string_view text, const StopwordSet& stopwords,
                                             const Lemmatizer& lemmatizer);

class EasyWordList {
 public:
  EasyWordList() = default;
  explicit EasyWordList(const std::vector<std::string>& words);
  static EasyWordList from_file(const std::filesystem::path& path);

  bool contains(std::string_view lower_word) const { return words_.contains(std::string(lower_word)); }
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

struct TextStats {
  std::size_t words = 0;
  std::size_t sentences = 0;
  std::size_t syllables = 0;
  std::size_t polysyllables = 0;    // >= 3 syllables
  std::size_t complex_words = 0;    // Gunning-Fog complex words
  std::size_t difficult_words = 0;  // not on the easy-word list

  bool operator==(const TextStats&) const = default;
};

// Fog "complex": >= 3 syllables, unless only the -es/-ed/-ing suffix lifts
// the word to three.
bool is_complex_word(std::string_view lower_word);

// Number of sentences holding at least one word; a boundary is a run of
// [.!?] followed by whitespace or end of text.
std::size_t count_sentences(const TokenStream& tokens);

// Throws Error{EmptyText} when the text holds no words.
TextStats text_stats(std::string_view text, const EasyWordList& easy_words);

}  // namespace rumourlens
