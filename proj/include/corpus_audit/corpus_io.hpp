#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace corpus_audit {

struct Review {
  std::string user_id;
  int rating = 0;  // 1..5
  std::string text;

  bool empty_text() const { return text.empty(); }
  friend bool operator==(const Review&, const Review&) = default;
};

struct Corpus {
  std::vector<Review> reviews;
  std::string source_label;

  std::size_t size() const { return reviews.size(); }
  std::size_t empty_text_count() const;
};

enum class CorpusFormat { csv, jsonl };

CorpusFormat corpus_format_from_path(const std::filesystem::path& path);

Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format);
Corpus load_corpus(const std::filesystem::path& path);

// In-memory variants; line numbers in errors refer to the text.
Corpus parse_corpus_csv(std::string_view text, std::string source_label = {});
Corpus parse_corpus_jsonl(std::string_view text, std::string source_label = {});

void write_corpus_csv(const Corpus& corpus, const std::filesystem::path& path);
std::string format_corpus_csv(const Corpus& corpus);

// Accepts "4" or "4.0"; rejects fractional values and anything outside 1..5.
std::optional<int> parse_rating(std::string_view field);

namespace csv {

struct Record {
  std::vector<std::string> fields;
  std::size_t line = 0;  // line on which the record starts
};

// RFC 4180 reader: quoted fields may hold commas, doubled quotes and newlines.
// Accepts LF or CRLF line endings. Blank lines are skipped.
std::vector<Record> parse(std::string_view text);

std::string quote(std::string_view field);

}  // namespace csv

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace corpus_audit
