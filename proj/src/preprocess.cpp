#include "corpus_audit/preprocess.hpp"

#include "corpus_audit/corpus_io.hpp"
#include "corpus_audit/errors.hpp"
#include "embedded_data.hpp"
#include "utf8.hpp"

namespace corpus_audit {

StopwordSet::StopwordSet(std::unordered_set<std::string> words) {
  for (const auto& w : words) words_.insert(to_lower(w));
}

bool StopwordSet::contains(std::string_view word) const {
  return words_.count(to_lower(word)) > 0;
}

std::string to_lower(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t pos = 0; pos < text.size();) {
    const auto cp = utf8::decode(text, pos);
    if (cp.length == 1 && cp.value >= 0x80) {
      out.push_back(text[pos]);  // stray byte, keep as is
    } else {
      utf8::append(out, utf8::to_lower(cp.value));
    }
    pos += cp.length;
  }
  return out;
}

bool is_punctuation_only(std::string_view token) {
  if (token.empty()) return false;
  for (std::size_t pos = 0; pos < token.size();) {
    const auto cp = utf8::decode(token, pos);
    if (!utf8::is_punct(cp.value)) return false;
    pos += cp.length;
  }
  return true;
}

std::vector<Token> scan_tokens(std::string_view text) {
  std::vector<Token> tokens;
  bool next_is_initial = true;
  std::size_t pos = 0;
  while (pos < text.size()) {
    // skip whitespace
    while (pos < text.size()) {
      const auto cp = utf8::decode(text, pos);
      if (!utf8::is_space(cp.value)) break;
      pos += cp.length;
    }
    if (pos >= text.size()) break;
    const std::size_t piece_begin = pos;
    while (pos < text.size()) {
      const auto cp = utf8::decode(text, pos);
      if (utf8::is_space(cp.value)) break;
      pos += cp.length;
    }
    const std::size_t piece_end = pos;

    std::size_t begin = piece_begin;
    while (begin < piece_end) {
      const auto cp = utf8::decode(text, begin);
      if (!utf8::is_punct(cp.value)) break;
      begin += cp.length;
    }
    std::size_t end = piece_end;
    bool terminal = false;
    while (end > begin) {
      const std::size_t prev = utf8::previous_start(text, end);
      const auto cp = utf8::decode(text, prev);
      if (!utf8::is_punct(cp.value)) break;
      terminal = terminal || utf8::is_sentence_terminal(cp.value);
      end = prev;
    }
    if (begin == end) {
      // punctuation-only piece such as "~" or "..."
      for (std::size_t p = piece_begin; p < piece_end;) {
        const auto cp = utf8::decode(text, p);
        if (utf8::is_sentence_terminal(cp.value)) next_is_initial = true;
        p += cp.length;
      }
      if (!tokens.empty()) tokens.back().closes_clause = true;
      continue;
    }
    Token token;
    token.text = std::string(text.substr(begin, end - begin));
    token.begin = begin;
    token.end = end;
    token.sentence_initial = next_is_initial;
    token.closes_clause = end != piece_end;
    tokens.push_back(std::move(token));
    next_is_initial = terminal;
  }
  return tokens;
}

TokenizedReview tokenize(std::string_view text, const StopwordSet& stopwords) {
  TokenizedReview out;
  for (auto& token : scan_tokens(text)) {
    std::string lowered = to_lower(token.text);
    if (!stopwords.words().count(lowered)) out.tokens_content.push_back(std::move(lowered));
    out.tokens_cased.push_back(std::move(token.text));
  }
  out.content_token_count = out.tokens_cased.size();
  return out;
}

TokenizedReview tokenize(std::string_view text) { return tokenize(text, default_stopwords()); }

std::vector<std::string> parse_word_list(std::string_view text) {
  std::vector<std::string> words;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
      line.remove_suffix(1);
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
    if (!line.empty() && line.front() != '#') words.emplace_back(line);
    pos = nl + 1;
  }
  return words;
}

const StopwordSet& default_stopwords() {
  static const StopwordSet set = [] {
    auto words = parse_word_list(data::data_stopwords_en());
    return StopwordSet(std::unordered_set<std::string>(words.begin(), words.end()));
  }();
  return set;
}

StopwordSet stopword_set(const std::optional<std::filesystem::path>& override_path) {
  if (!override_path) return default_stopwords();
  auto words = parse_word_list(read_file(*override_path));
  return StopwordSet(std::unordered_set<std::string>(words.begin(), words.end()));
}

std::string normalize_for_dedup(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (std::size_t pos = 0; pos < text.size();) {
    const auto cp = utf8::decode(text, pos);
    pos += cp.length;
    if (utf8::is_space(cp.value)) {
      pending_space = !out.empty();
      continue;
    }
    if (utf8::is_punct(cp.value)) continue;
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    utf8::append(out, utf8::to_lower(cp.value));
  }
  return out;
}

}  // namespace corpus_audit
