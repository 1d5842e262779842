#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "corpus_audit/corpus_io.hpp"
#include "corpus_audit/embedding.hpp"
#include "corpus_audit/privacy_content.hpp"
#include "corpus_audit/report.hpp"
#include "corpus_audit/semantic_metrics.hpp"
#include "corpus_audit/sentiment_metrics.hpp"
#include "corpus_audit/stylistic_outliers.hpp"

namespace corpus_audit {

struct AuditConfig {
  EmbeddingConfig embedding;
  SemanticOptions semantic;
  OutlierOptions outliers;
  bool allow_empty_segments = false;
  std::array<double, kRatingLevels> benchmark = kLinearBenchmark;
  std::optional<std::filesystem::path> stopwords;
  std::string sentiment_backend = "lexicon";  // lexicon | adapter
  std::string privacy_backend = "rules";      // rules | adapter
  std::string adapter_cmd;
  bool record_timings = false;
};

// Everything the CLI exports besides the report itself.
struct AuditResult {
  MetricReport report;
  std::vector<MentionSpans> mentions;
  std::optional<OutlierAnalysis> outliers;
  std::optional<EmbeddingModel> model;
};

// Runs every metric family. An undefined metric or a backend failure marks that block
// skipped with the reason and the audit continues.
AuditResult audit(const Corpus& corpus, const AuditConfig& config);
// Same, with the backends supplied by the caller.
AuditResult audit(const Corpus& corpus, const AuditConfig& config, SentimentBackend& sentiment,
                  MentionExtractor& extractor);

// Canonical settings object recorded in provenance and hashed.
std::string audit_settings_json(const AuditConfig& config, const std::string& sentiment_backend,
                                const std::string& privacy_backend);

}  // namespace corpus_audit
