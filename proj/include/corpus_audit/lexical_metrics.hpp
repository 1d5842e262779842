#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "corpus_audit/kernels/ngram_count.hpp"

namespace corpus_audit {

using Ngram = std::vector<std::string>;
using TokenLists = std::span<const std::vector<std::string>>;

struct NgramStats {
  int n = 0;
  std::uint64_t total = 0;   // T
  std::uint64_t unique = 0;  // U
  double uniqueness_ratio = 0.0;    // L_r = U / T
  double normalized_entropy = 0.0;  // H / log2 U, 0 when U == 1

  friend bool operator==(const NgramStats&, const NgramStats&) = default;
};

// Multiset of contiguous n-grams of one token list.
std::map<Ngram, std::size_t> extract_ngrams(std::span<const std::string> tokens, int n);

// Both throw UndefinedMetricError when the pooled n-gram count is zero.
double lexical_uniqueness_ratio(TokenLists corpus_tokens, int n);
double normalized_entropy(TokenLists corpus_tokens, int n);

NgramStats ngram_stats(TokenLists corpus_tokens, int n);

// Summary -> stats; throws UndefinedMetricError when summary.total == 0.
NgramStats stats_from_summary(const kernels::NgramSummary& summary, int n);

// Maps tokens to dense ids once so all five orders share one pass of string hashing.
std::vector<kernels::IdSequence> intern_tokens(TokenLists corpus_tokens);

// Stats for n = 1..5; an entry is nullopt when that order has no n-grams.
std::array<std::optional<NgramStats>, kernels::kMaxNgram> lexical_profile(TokenLists corpus_tokens);

}  // namespace corpus_audit
