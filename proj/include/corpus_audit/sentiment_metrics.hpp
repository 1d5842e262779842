#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "corpus_audit/corpus_io.hpp"
#include "corpus_audit/errors.hpp"

namespace corpus_audit {

enum class Sentiment { negative, positive };

std::string to_string(Sentiment s);

inline constexpr std::size_t kRatingLevels = 5;
// Expected positive rate per rating: (i - 1) / 4.
inline constexpr std::array<double, kRatingLevels> kLinearBenchmark{0.0, 0.25, 0.5, 0.75, 1.0};

class SentimentBackend {
 public:
  virtual ~SentimentBackend() = default;
  virtual std::string name() const = 0;
  virtual std::vector<Sentiment> classify(std::span<const std::string> texts) = 0;
};

// Signed polarity count over bundled word lists. "not", "never", "no" and "n't"
// contractions flip the next polar word within three tokens. Zero or tied score is negative.
class LexiconSentiment final : public SentimentBackend {
 public:
  LexiconSentiment();
  LexiconSentiment(std::unordered_set<std::string> positive, std::unordered_set<std::string> negative);

  std::string name() const override { return "lexicon"; }
  std::vector<Sentiment> classify(std::span<const std::string> texts) override;

  int score(std::string_view text) const;
  Sentiment classify_one(std::string_view text) const { return score(text) > 0 ? Sentiment::positive : Sentiment::negative; }

 private:
  std::unordered_set<std::string> positive_;
  std::unordered_set<std::string> negative_;
};

Sentiment classify_sentiment(std::string_view text, SentimentBackend& backend);

class EmptySegmentError : public UndefinedMetricError {
 public:
  explicit EmptySegmentError(int rating)
      : UndefinedMetricError("empty segment: no reviews with rating " + std::to_string(rating)), rating_(rating) {}
  int rating() const noexcept { return rating_; }

 private:
  int rating_;
};

struct SegmentRates {
  std::array<std::optional<double>, kRatingLevels> y;  // nullopt for an empty, allowed segment
  std::array<std::size_t, kRatingLevels> counts{};
};

SegmentRates segment_positive_rates(std::span<const int> ratings, std::span<const Sentiment> labels,
                                    bool allow_empty_segments);
SegmentRates segment_positive_rates(const Corpus& corpus, SentimentBackend& backend,
                                    bool allow_empty_segments);

// Mean over present segments of 1 - |y_i - benchmark_i|.
double sentiment_diversity(std::span<const std::optional<double>> y, std::span<const double> benchmark);
double sentiment_diversity(std::span<const double> y, std::span<const double> benchmark);

struct SentimentProfile {
  std::array<std::optional<double>, kRatingLevels> y;
  std::array<double, kRatingLevels> benchmark = kLinearBenchmark;
  std::array<std::size_t, kRatingLevels> segment_counts{};
  double d_sen = 0.0;
  std::string backend;

  friend bool operator==(const SentimentProfile&, const SentimentProfile&) = default;
};

SentimentProfile sentiment_profile(std::span<const int> ratings, std::span<const Sentiment> labels,
                                   bool allow_empty_segments,
                                   const std::array<double, kRatingLevels>& benchmark = kLinearBenchmark);

}  // namespace corpus_audit
