#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "corpus_audit/lexical_metrics.hpp"
#include "corpus_audit/privacy_content.hpp"
#include "corpus_audit/semantic_metrics.hpp"
#include "corpus_audit/sentiment_metrics.hpp"
#include "corpus_audit/stylistic_outliers.hpp"

namespace corpus_audit {

inline constexpr int kReportSchemaVersion = 1;

struct InputSummary {
  std::string source;
  std::size_t reviews = 0;
  std::size_t empty_reviews = 0;

  friend bool operator==(const InputSummary&, const InputSummary&) = default;
};

struct LexicalBlock {
  std::array<std::optional<NgramStats>, kernels::kMaxNgram> orders;  // n = 1..5; nullopt when T = 0

  friend bool operator==(const LexicalBlock&, const LexicalBlock&) = default;
};

struct PrivacyBlock {
  ContentPrivacyStats stats;
  std::string backend;

  friend bool operator==(const PrivacyBlock&, const PrivacyBlock&) = default;
};

struct Provenance {
  std::string config_hash;  // FNV-1a 64 of the canonical settings object
  std::uint64_t seed = 0;
  std::string settings_json;  // canonical settings object, compact JSON
  std::map<std::string, double> timings_ms;  // empty unless requested

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

enum class Block { lexical, semantic, sentiment, privacy, outliers };
std::string to_string(Block b);

struct MetricReport {
  InputSummary input;
  std::optional<LexicalBlock> lexical;
  std::optional<SemanticReport> semantic;
  std::optional<SentimentProfile> sentiment;
  std::optional<PrivacyBlock> privacy;
  std::optional<OutlierReport> outliers;
  std::map<std::string, std::string> skipped;  // block name -> reason
  Provenance provenance;

  bool backend_failure() const;
  friend bool operator==(const MetricReport&, const MetricReport&) = default;
};

inline constexpr std::string_view kBackendFailurePrefix = "backend error: ";

std::uint64_t fnv1a64(std::string_view bytes);

std::string report_to_json(const MetricReport& report);
MetricReport report_from_json(std::string_view text);

// Header "metric,value"; one row per scalar metric; skipped values are empty.
std::string report_to_csv(const MetricReport& report);

enum class ReportFormat { json, csv };
void write_report(const MetricReport& report, const std::filesystem::path& path, ReportFormat format);
MetricReport load_report(const std::filesystem::path& path);

struct ComparisonRow {
  std::string metric;
  std::vector<std::optional<double>> values;  // one per report, input order
};

struct ComparisonTable {
  std::vector<std::string> labels;
  std::vector<ComparisonRow> rows;
};

// Metrics as rows, reports as columns. Throws PreconditionError for fewer than two reports.
ComparisonTable compare(std::span<const MetricReport> reports, std::span<const std::string> labels);

// Both renderings add delta columns (each report minus the first); missing cells are "—".
std::string comparison_csv(const ComparisonTable& table);
std::string comparison_markdown(const ComparisonTable& table);

}  // namespace corpus_audit
