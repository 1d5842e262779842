#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace corpus_audit {

// A whitespace-delimited token with leading/trailing punctuation removed.
// Offsets are byte offsets of the stripped token in the source text.
struct Token {
  std::string text;
  std::size_t begin = 0;
  std::size_t end = 0;
  bool sentence_initial = false;
  bool closes_clause = false;  // raw piece ended in punctuation (".", ",", "!" ...)
};

class StopwordSet {
 public:
  StopwordSet() = default;
  explicit StopwordSet(std::unordered_set<std::string> words);

  // Case-insensitive membership.
  bool contains(std::string_view word) const;
  std::size_t size() const { return words_.size(); }
  const std::unordered_set<std::string>& words() const { return words_; }

 private:
  std::unordered_set<std::string> words_;
};

struct TokenizedReview {
  std::vector<std::string> tokens_cased;
  std::vector<std::string> tokens_content;  // lowercased, stopwords removed
  std::size_t content_token_count = 0;      // tokens excluding punctuation, stopwords included
};

// Splits on Unicode whitespace, strips edge punctuation, drops punctuation-only pieces.
std::vector<Token> scan_tokens(std::string_view text);

TokenizedReview tokenize(std::string_view text, const StopwordSet& stopwords);
TokenizedReview tokenize(std::string_view text);

// Bundled English list, or the override file (one word per line) when given.
StopwordSet stopword_set(const std::optional<std::filesystem::path>& override_path = std::nullopt);
const StopwordSet& default_stopwords();

// ASCII and Latin-1 lowercase; other code points pass through.
std::string to_lower(std::string_view text);

// Removes all punctuation, lowercases and collapses whitespace. Used for duplicate detection.
std::string normalize_for_dedup(std::string_view text);

bool is_punctuation_only(std::string_view token);

// Parses a one-entry-per-line list, ignoring blank lines and '#' comments.
std::vector<std::string> parse_word_list(std::string_view text);

}  // namespace corpus_audit
