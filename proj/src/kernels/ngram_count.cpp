#include "corpus_audit/kernels/ngram_count.hpp"

#include <array>
#include <unordered_map>

#include <omp.h>

#include "corpus_audit/errors.hpp"

namespace corpus_audit::kernels {

namespace {

struct NgramKey {
  std::array<std::uint32_t, kMaxNgram> ids{};
  bool operator==(const NgramKey&) const = default;
};

struct NgramKeyHash {
  std::size_t operator()(const NgramKey& key) const noexcept {
    std::uint64_t h = 0x9E3779B97F4A7C15ULL;
    for (auto id : key.ids) {
      h ^= id + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
      h ^= h >> 31;
      h *= 0xBF58476D1CE4E5B9ULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

using CountTable = std::unordered_map<NgramKey, std::uint64_t, NgramKeyHash>;

void require_order(int n) {
  if (n < 1 || n > kMaxNgram) throw ParameterError("n-gram order must be in 1..5, got " + std::to_string(n));
}

void count_sequence(const IdSequence& seq, int n, CountTable& table) {
  const auto order = static_cast<std::size_t>(n);
  if (seq.size() < order) return;
  for (std::size_t start = 0; start + order <= seq.size(); ++start) {
    NgramKey key;
    for (std::size_t k = 0; k < order; ++k) key.ids[k] = seq[start + k];
    ++table[key];
  }
}

NgramSummary summarize(const CountTable& table) {
  NgramSummary s;
  s.unique = table.size();
  for (const auto& [key, f] : table) {
    s.total += f;
    ++s.frequency_histogram[f];
  }
  return s;
}

}  // namespace

NgramSummary count_ngrams(std::span<const IdSequence> sequences, int n) {
  require_order(n);
  const int threads = omp_get_max_threads();
  std::vector<CountTable> locals(static_cast<std::size_t>(threads));
#pragma omp parallel num_threads(threads)
  {
    auto& table = locals[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
    for (std::ptrdiff_t s = 0; s < static_cast<std::ptrdiff_t>(sequences.size()); ++s) {
      count_sequence(sequences[static_cast<std::size_t>(s)], n, table);
    }
  }
  CountTable merged = std::move(locals.front());
  for (std::size_t t = 1; t < locals.size(); ++t) {
    for (const auto& [key, f] : locals[t]) merged[key] += f;
    CountTable().swap(locals[t]);
  }
  return summarize(merged);
}

namespace reference {

NgramSummary count_ngrams(std::span<const IdSequence> sequences, int n) {
  require_order(n);
  CountTable table;
  for (const auto& seq : sequences) count_sequence(seq, n, table);
  return summarize(table);
}

}  // namespace reference

}  // namespace corpus_audit::kernels
