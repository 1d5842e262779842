#include "corpus_audit/corpus_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "corpus_audit/errors.hpp"

namespace corpus_audit {

std::size_t Corpus::empty_text_count() const {
  return static_cast<std::size_t>(
      std::count_if(reviews.begin(), reviews.end(), [](const Review& r) { return r.empty_text(); }));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path.string());
  return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

std::optional<int> parse_rating(std::string_view field) {
  while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
  while (!field.empty() && (field.back() == ' ' || field.back() == '\t')) field.remove_suffix(1);
  if (field.empty()) return std::nullopt;
  double value = 0.0;
  const auto* first = field.data();
  const auto* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || !std::isfinite(value)) return std::nullopt;
  if (value != std::floor(value) || value < 1.0 || value > 5.0) return std::nullopt;
  return static_cast<int>(value);
}

namespace csv {

std::vector<Record> parse(std::string_view text) {
  std::vector<Record> records;
  if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  std::size_t line = 1;
  std::size_t pos = 0;
  const std::size_t n = text.size();
  while (pos < n) {
    // blank line
    if (text[pos] == '\n') {
      ++line;
      ++pos;
      continue;
    }
    if (text[pos] == '\r' && pos + 1 < n && text[pos + 1] == '\n') {
      ++line;
      pos += 2;
      continue;
    }
    Record record;
    record.line = line;
    std::string field;
    bool in_quotes = false;
    bool done = false;
    while (!done) {
      if (pos >= n) {
        if (in_quotes) throw RecordError(record.line, "unterminated quoted field");
        record.fields.push_back(std::move(field));
        done = true;
        break;
      }
      const char c = text[pos];
      if (in_quotes) {
        if (c == '"') {
          if (pos + 1 < n && text[pos + 1] == '"') {
            field.push_back('"');
            pos += 2;
          } else {
            in_quotes = false;
            ++pos;
          }
        } else {
          if (c == '\n') ++line;
          field.push_back(c);
          ++pos;
        }
        continue;
      }
      if (c == '"' && field.empty()) {
        in_quotes = true;
        ++pos;
      } else if (c == ',') {
        record.fields.push_back(std::move(field));
        field.clear();
        ++pos;
      } else if (c == '\n' || (c == '\r' && pos + 1 < n && text[pos + 1] == '\n')) {
        record.fields.push_back(std::move(field));
        pos += (c == '\r') ? 2 : 1;
        ++line;
        done = true;
      } else {
        field.push_back(c);
        ++pos;
      }
    }
    records.push_back(std::move(record));
  }
  return records;
}

std::string quote(std::string_view field) {
  const bool needs = field.find_first_of(",\"\r\n") != std::string_view::npos ||
                     (!field.empty() && (field.front() == ' ' || field.back() == ' '));
  if (!needs) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace csv

namespace {

std::string file_label(const std::filesystem::path& path) { return path.stem().string(); }

}  // namespace

Corpus parse_corpus_csv(std::string_view text, std::string source_label) {
  auto records = csv::parse(text);
  if (records.empty()) throw SchemaError("missing header row: expected user_id,rating,review");
  const auto& header = records.front().fields;
  auto column = [&](const char* name) -> std::size_t {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw SchemaError(std::string("missing column '") + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t user_col = column("user_id");
  const std::size_t rating_col = column("rating");
  const std::size_t review_col = column("review");

  Corpus corpus;
  corpus.source_label = std::move(source_label);
  corpus.reviews.reserve(records.size() - 1);
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.fields.size() != header.size()) {
      throw RecordError(rec.line, "expected " + std::to_string(header.size()) + " fields, found " +
                                      std::to_string(rec.fields.size()));
    }
    Review review;
    review.user_id = rec.fields[user_col];
    if (review.user_id.empty()) throw RecordError(rec.line, "empty user_id");
    auto rating = parse_rating(rec.fields[rating_col]);
    if (!rating) throw RecordError(rec.line, "invalid rating '" + rec.fields[rating_col] + "'");
    review.rating = *rating;
    review.text = rec.fields[review_col];
    corpus.reviews.push_back(std::move(review));
  }
  return corpus;
}

Corpus parse_corpus_jsonl(std::string_view text, std::string source_label) {
  Corpus corpus;
  corpus.source_label = std::move(source_label);
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (line_no == 1 && line.size() >= 3 && line.substr(0, 3) == "\xEF\xBB\xBF") line.remove_prefix(3);
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;

    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw RecordError(line_no, std::string("malformed JSON: ") + e.what());
    }
    if (!obj.is_object()) throw RecordError(line_no, "expected a JSON object");
    for (const char* key : {"user_id", "rating", "review"}) {
      if (!obj.contains(key)) {
        throw SchemaError("line " + std::to_string(line_no) + ": missing key '" + key + "'");
      }
    }
    Review review;
    const auto& uid = obj["user_id"];
    if (uid.is_string()) {
      review.user_id = uid.get<std::string>();
    } else if (uid.is_number_integer()) {
      review.user_id = uid.dump();
    } else {
      throw RecordError(line_no, "user_id must be a string");
    }
    if (review.user_id.empty()) throw RecordError(line_no, "empty user_id");

    const auto& rating = obj["rating"];
    std::optional<int> parsed;
    if (rating.is_number()) {
      parsed = parse_rating(rating.dump());
    } else if (rating.is_string()) {
      parsed = parse_rating(rating.get<std::string>());
    }
    if (!parsed) throw RecordError(line_no, "invalid rating " + rating.dump());
    review.rating = *parsed;

    const auto& body = obj["review"];
    if (!body.is_string()) throw RecordError(line_no, "review must be a string");
    review.text = body.get<std::string>();
    corpus.reviews.push_back(std::move(review));
  }
  return corpus;
}

CorpusFormat corpus_format_from_path(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".jsonl" || ext == ".ndjson" || ext == ".json") return CorpusFormat::jsonl;
  return CorpusFormat::csv;
}

Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format) {
  const std::string text = read_file(path);
  return format == CorpusFormat::csv ? parse_corpus_csv(text, file_label(path))
                                     : parse_corpus_jsonl(text, file_label(path));
}

Corpus load_corpus(const std::filesystem::path& path) {
  return load_corpus(path, corpus_format_from_path(path));
}

std::string format_corpus_csv(const Corpus& corpus) {
  std::string out = "user_id,rating,review\n";
  for (const auto& r : corpus.reviews) {
    out += csv::quote(r.user_id);
    out += ',';
    out += std::to_string(r.rating);
    out += ',';
    out += csv::quote(r.text);
    out += '\n';
  }
  return out;
}

void write_corpus_csv(const Corpus& corpus, const std::filesystem::path& path) {
  write_file(path, format_corpus_csv(corpus));
}

}  // namespace corpus_audit
