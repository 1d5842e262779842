#include "corpus_audit/lexical_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "corpus_audit/errors.hpp"

namespace corpus_audit {

namespace {

void require_order(int n) {
  if (n < 1 || n > kernels::kMaxNgram) {
    throw ParameterError("n-gram order must be in 1..5, got " + std::to_string(n));
  }
}

}  // namespace

std::map<Ngram, std::size_t> extract_ngrams(std::span<const std::string> tokens, int n) {
  require_order(n);
  std::map<Ngram, std::size_t> out;
  const auto order = static_cast<std::size_t>(n);
  for (std::size_t i = 0; i + order <= tokens.size(); ++i) {
    ++out[Ngram(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                tokens.begin() + static_cast<std::ptrdiff_t>(i + order))];
  }
  return out;
}

std::vector<kernels::IdSequence> intern_tokens(TokenLists corpus_tokens) {
  std::unordered_map<std::string, std::uint32_t> ids;
  std::vector<kernels::IdSequence> out;
  out.reserve(corpus_tokens.size());
  for (const auto& review : corpus_tokens) {
    kernels::IdSequence seq;
    seq.reserve(review.size());
    for (const auto& tok : review) {
      auto [it, inserted] = ids.try_emplace(tok, static_cast<std::uint32_t>(ids.size()));
      seq.push_back(it->second);
    }
    out.push_back(std::move(seq));
  }
  return out;
}

NgramStats stats_from_summary(const kernels::NgramSummary& summary, int n) {
  if (summary.total == 0) {
    throw UndefinedMetricError("no " + std::to_string(n) + "-grams in corpus");
  }
  NgramStats s;
  s.n = n;
  s.total = summary.total;
  s.unique = summary.unique;
  s.uniqueness_ratio = static_cast<double>(s.unique) / static_cast<double>(s.total);
  if (s.unique >= 2) {
    const double t = static_cast<double>(s.total);
    double h = 0.0;
    for (const auto& [f, count] : summary.frequency_histogram) {
      const double p = static_cast<double>(f) / t;
      h -= static_cast<double>(count) * p * std::log2(p);
    }
    s.normalized_entropy = std::clamp(h / std::log2(static_cast<double>(s.unique)), 0.0, 1.0);
  }
  return s;
}

NgramStats ngram_stats(TokenLists corpus_tokens, int n) {
  require_order(n);
  const auto ids = intern_tokens(corpus_tokens);
  return stats_from_summary(kernels::count_ngrams(ids, n), n);
}

double lexical_uniqueness_ratio(TokenLists corpus_tokens, int n) {
  return ngram_stats(corpus_tokens, n).uniqueness_ratio;
}

double normalized_entropy(TokenLists corpus_tokens, int n) {
  return ngram_stats(corpus_tokens, n).normalized_entropy;
}

std::array<std::optional<NgramStats>, kernels::kMaxNgram> lexical_profile(TokenLists corpus_tokens) {
  const auto ids = intern_tokens(corpus_tokens);
  std::array<std::optional<NgramStats>, kernels::kMaxNgram> out;
  for (int n = 1; n <= kernels::kMaxNgram; ++n) {
    const auto summary = kernels::count_ngrams(ids, n);
    if (summary.total > 0) out[static_cast<std::size_t>(n - 1)] = stats_from_summary(summary, n);
  }
  return out;
}

}  // namespace corpus_audit
