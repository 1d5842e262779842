#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "corpus_audit/corpus_io.hpp"

namespace corpus_audit {

struct EntitySpan {
  std::string text;
  std::string category;  // "NAME", "MEASURE", or an adapter label
  std::size_t begin = 0;  // byte offsets into the review text
  std::size_t end = 0;

  friend bool operator==(const EntitySpan&, const EntitySpan&) = default;
};

struct MentionSpans {
  std::vector<EntitySpan> entities;  // e_i = entities.size()
  std::vector<std::string> nominals;  // unique, lowercased; n_i = nominals.size()
  std::size_t token_count = 0;        // T_i
  double entity_density = 0.0;        // e_i / T_i
  double nominal_density = 0.0;       // n_i / T_i
};

class MentionExtractor {
 public:
  virtual ~MentionExtractor() = default;
  virtual std::string name() const = 0;
  virtual std::vector<std::vector<EntitySpan>> entities(std::span<const std::string> texts) = 0;
  virtual std::vector<std::vector<std::string>> nominals(std::span<const std::string> texts) = 0;
};

// Pattern and lexicon baseline.
//  entities: runs of capitalized tokens that do not start a sentence (joined across "of"),
//            numbers, feet-inch heights, number+unit phrases, ranges, uppercase size labels.
//  nominals: personal pronouns, kinship/role nouns, age descriptors ("11yo"), and
//            capitalized tokens that do not start a sentence.
class RuleExtractor final : public MentionExtractor {
 public:
  std::string name() const override { return "rules"; }
  std::vector<std::vector<EntitySpan>> entities(std::span<const std::string> texts) override;
  std::vector<std::vector<std::string>> nominals(std::span<const std::string> texts) override;

  static std::vector<EntitySpan> extract_entities(std::string_view text);
  static std::vector<std::string> extract_nominals(std::string_view text);
};

// Keeps the longest spans first, dropping any span overlapping an accepted one.
std::vector<EntitySpan> resolve_overlaps(std::vector<EntitySpan> spans);

// Unique by lowercased surface form, first-appearance order.
std::vector<std::string> unique_nominals(std::span<const std::string> tokens);

MentionSpans make_mention_spans(std::string_view text, std::vector<EntitySpan> entities,
                                std::span<const std::string> nominals);

std::vector<MentionSpans> extract_mentions(std::span<const std::string> texts, MentionExtractor& extractor);

struct ContentPrivacyStats {
  double mean_entity_count = 0.0;
  double mean_entity_density = 0.0;
  double max_entity_count = 0.0;
  double max_entity_density = 0.0;
  double mean_nominal_count = 0.0;
  double mean_nominal_density = 0.0;
  double max_nominal_count = 0.0;
  double max_nominal_density = 0.0;
  std::size_t included_reviews = 0;
  std::size_t excluded_reviews = 0;  // T_i == 0

  friend bool operator==(const ContentPrivacyStats&, const ContentPrivacyStats&) = default;
};

// Throws UndefinedMetricError when every review has T_i == 0.
ContentPrivacyStats content_privacy_stats(std::span<const MentionSpans> mentions);

}  // namespace corpus_audit
