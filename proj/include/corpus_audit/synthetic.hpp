#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>

#include "corpus_audit/corpus_io.hpp"

namespace corpus_audit {

// Template-free review text from fixed word banks. Polarity words are drawn so that the
// share of positive wording rises with the rating.
class ReviewWriter {
 public:
  explicit ReviewWriter(std::uint64_t seed);

  std::string write(int rating, std::size_t words);
  // A short sentence with personal details (names, sizes, family members).
  std::string personal_detail();
  // Text using a rare private vocabulary; used to plant stylistic outliers.
  std::string write_unusual(std::size_t words);
  std::size_t draw_length();  // skewed toward short reviews
  int draw_rating();

  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

struct SyntheticOptions {
  std::size_t reviews = 1000;
  std::size_t reviews_per_user = 5;
  double unusual_user_fraction = 0.005;
  double personal_detail_rate = 0.15;
  std::uint64_t seed = 7;
};

Corpus synthetic_corpus(const SyntheticOptions& options);

}  // namespace corpus_audit
