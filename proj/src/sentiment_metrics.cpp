#include "corpus_audit/sentiment_metrics.hpp"

#include <cmath>

#include "corpus_audit/preprocess.hpp"
#include "embedded_data.hpp"

namespace corpus_audit {

std::string to_string(Sentiment s) { return s == Sentiment::positive ? "positive" : "negative"; }

namespace {

std::unordered_set<std::string> word_set(std::string_view text) {
  auto words = parse_word_list(text);
  return {words.begin(), words.end()};
}

bool is_negator(const std::string& w) {
  if (w == "not" || w == "never" || w == "no") return true;
  return w.size() > 3 && w.compare(w.size() - 3, 3, "n't") == 0;
}

constexpr int kNegationReach = 3;

}  // namespace

LexiconSentiment::LexiconSentiment()
    : positive_(word_set(data::data_sentiment_positive())),
      negative_(word_set(data::data_sentiment_negative())) {}

LexiconSentiment::LexiconSentiment(std::unordered_set<std::string> positive,
                                   std::unordered_set<std::string> negative)
    : positive_(std::move(positive)), negative_(std::move(negative)) {}

int LexiconSentiment::score(std::string_view text) const {
  int total = 0;
  int reach = 0;
  for (const auto& token : scan_tokens(text)) {
    std::string w = to_lower(token.text);
    // normalize typographic apostrophes so "don’t" negates like "don't"
    for (std::size_t p = w.find("\xE2\x80\x99"); p != std::string::npos; p = w.find("\xE2\x80\x99", p)) {
      w.replace(p, 3, "'");
    }
    if (is_negator(w)) {
      reach = kNegationReach;
      continue;
    }
    int polarity = positive_.count(w) ? 1 : (negative_.count(w) ? -1 : 0);
    if (polarity != 0) {
      if (reach > 0) polarity = -polarity;
      total += polarity;
      reach = 0;
    } else if (reach > 0) {
      --reach;
    }
  }
  return total;
}

std::vector<Sentiment> LexiconSentiment::classify(std::span<const std::string> texts) {
  std::vector<Sentiment> out(texts.size());
#pragma omp parallel for schedule(dynamic, 256)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(texts.size()); ++i) {
    out[static_cast<std::size_t>(i)] = classify_one(texts[static_cast<std::size_t>(i)]);
  }
  return out;
}

Sentiment classify_sentiment(std::string_view text, SentimentBackend& backend) {
  const std::string owned(text);
  return backend.classify(std::span<const std::string>(&owned, 1)).at(0);
}

SegmentRates segment_positive_rates(std::span<const int> ratings, std::span<const Sentiment> labels,
                                    bool allow_empty_segments) {
  if (ratings.size() != labels.size()) throw PreconditionError("ratings and labels differ in length");
  SegmentRates out;
  std::array<std::size_t, kRatingLevels> positives{};
  for (std::size_t i = 0; i < ratings.size(); ++i) {
    if (ratings[i] < 1 || ratings[i] > 5) throw PreconditionError("rating outside 1..5");
    const auto seg = static_cast<std::size_t>(ratings[i] - 1);
    ++out.counts[seg];
    if (labels[i] == Sentiment::positive) ++positives[seg];
  }
  for (std::size_t s = 0; s < kRatingLevels; ++s) {
    if (out.counts[s] == 0) {
      if (!allow_empty_segments) throw EmptySegmentError(static_cast<int>(s + 1));
      continue;
    }
    out.y[s] = static_cast<double>(positives[s]) / static_cast<double>(out.counts[s]);
  }
  return out;
}

SegmentRates segment_positive_rates(const Corpus& corpus, SentimentBackend& backend,
                                    bool allow_empty_segments) {
  std::vector<std::string> texts;
  std::vector<int> ratings;
  texts.reserve(corpus.size());
  ratings.reserve(corpus.size());
  for (const auto& r : corpus.reviews) {
    texts.push_back(r.text);
    ratings.push_back(r.rating);
  }
  const auto labels = backend.classify(texts);
  return segment_positive_rates(ratings, labels, allow_empty_segments);
}

double sentiment_diversity(std::span<const std::optional<double>> y, std::span<const double> benchmark) {
  if (y.size() != benchmark.size()) throw PreconditionError("sentiment arrays are not aligned");
  double sum = 0.0;
  std::size_t present = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!y[i]) continue;
    sum += 1.0 - std::abs(*y[i] - benchmark[i]);
    ++present;
  }
  if (present == 0) throw UndefinedMetricError("no rating segment has reviews");
  return sum / static_cast<double>(present);
}

double sentiment_diversity(std::span<const double> y, std::span<const double> benchmark) {
  std::vector<std::optional<double>> wrapped(y.begin(), y.end());
  return sentiment_diversity(wrapped, benchmark);
}

SentimentProfile sentiment_profile(std::span<const int> ratings, std::span<const Sentiment> labels,
                                   bool allow_empty_segments,
                                   const std::array<double, kRatingLevels>& benchmark) {
  const auto rates = segment_positive_rates(ratings, labels, allow_empty_segments);
  SentimentProfile p;
  p.y = rates.y;
  p.segment_counts = rates.counts;
  p.benchmark = benchmark;
  p.d_sen = sentiment_diversity(p.y, p.benchmark);
  return p;
}

}  // namespace corpus_audit
