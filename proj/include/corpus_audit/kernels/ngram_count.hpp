#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace corpus_audit::kernels {

inline constexpr int kMaxNgram = 5;

// Pooled n-gram counts reduced to what the lexical metrics need.
struct NgramSummary {
  std::uint64_t total = 0;   // T
  std::uint64_t unique = 0;  // U
  // frequency f -> number of distinct n-grams seen exactly f times
  std::map<std::uint64_t, std::uint64_t> frequency_histogram;

  friend bool operator==(const NgramSummary&, const NgramSummary&) = default;
};

using IdSequence = std::vector<std::uint32_t>;

// Counts contiguous n-grams inside each sequence (never across sequences).
// Thread-local tables merged after the parallel pass; merge order does not affect the result.
NgramSummary count_ngrams(std::span<const IdSequence> sequences, int n);

namespace reference {
NgramSummary count_ngrams(std::span<const IdSequence> sequences, int n);
}

}  // namespace corpus_audit::kernels
