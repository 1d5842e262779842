#include <doctest.h>

#include <random>

#include "../oracles.hpp"
#include "corpus_audit/errors.hpp"
#include "corpus_audit/kernels/ngram_count.hpp"
#include "corpus_audit/lexical_metrics.hpp"

using namespace corpus_audit;
using Corpus2 = std::vector<std::vector<std::string>>;

TEST_CASE("extract bigrams by hand") {
  const std::vector<std::string> t{"a", "b", "a", "b"};
  const auto g = extract_ngrams(t, 2);
  REQUIRE(g.size() == 2);
  CHECK(g.at({"a", "b"}) == 2);
  CHECK(g.at({"b", "a"}) == 1);
}

TEST_CASE("too short for n") {
  CHECK(extract_ngrams(std::vector<std::string>{"a"}, 3).empty());
  CHECK(extract_ngrams(std::vector<std::string>{"a", "b", "c"}, 1).size() == 3);
}

TEST_CASE("n out of range") {
  const std::vector<std::string> t{"a"};
  CHECK_THROWS_AS(extract_ngrams(t, 0), ParameterError);
  CHECK_THROWS_AS(extract_ngrams(t, 6), ParameterError);
  const Corpus2 c{{"a"}};
  CHECK_THROWS_AS(lexical_uniqueness_ratio(c, 6), ParameterError);
}

TEST_CASE("uniqueness ratio examples") {
  CHECK(lexical_uniqueness_ratio(Corpus2{{"a", "b"}, {"c"}}, 1) == 1.0);
  CHECK(lexical_uniqueness_ratio(Corpus2{{"a", "b", "a", "b"}}, 1) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(lexical_uniqueness_ratio(Corpus2{{"a", "b", "a", "b"}}, 2) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("n-grams never cross review boundaries") {
  const auto s = ngram_stats(Corpus2{{"a", "b"}, {"c", "d"}}, 2);
  CHECK(s.total == 2);
  CHECK(s.unique == 2);
  CHECK_THROWS_AS(ngram_stats(Corpus2{{"a"}, {"b"}}, 2), UndefinedMetricError);
}

TEST_CASE("normalized entropy examples") {
  CHECK(normalized_entropy(Corpus2{{"a", "b"}}, 1) == doctest::Approx(1.0).epsilon(1e-15));
  // -(3/4 log2 3/4 + 1/4 log2 1/4), computed independently
  CHECK(normalized_entropy(Corpus2{{"a", "a", "a", "b"}}, 1) == doctest::Approx(0.8112781244591328).epsilon(1e-14));
  CHECK(normalized_entropy(Corpus2{{"a", "a", "a"}}, 1) == 0.0);
  CHECK_THROWS_AS(normalized_entropy(Corpus2{{}}, 1), UndefinedMetricError);
}

TEST_CASE("duplicating the corpus keeps entropy and halves the ratio") {
  const Corpus2 c{{"x", "y", "z", "x"}, {"y", "y", "w"}};
  Corpus2 doubled = c;
  doubled.insert(doubled.end(), c.begin(), c.end());
  for (int n = 1; n <= 3; ++n) {
    CHECK(normalized_entropy(doubled, n) == doctest::Approx(normalized_entropy(c, n)).epsilon(1e-12));
    CHECK(lexical_uniqueness_ratio(doubled, n) == doctest::Approx(lexical_uniqueness_ratio(c, n) / 2).epsilon(1e-15));
  }
}

namespace {

Corpus2 random_corpus(std::mt19937_64& rng, std::size_t max_tokens, std::size_t vocab) {
  Corpus2 c;
  std::uniform_int_distribution<std::size_t> reviews(1, 5), word(0, vocab - 1), len(0, 8);
  std::size_t budget = max_tokens;
  const auto r = reviews(rng);
  for (std::size_t i = 0; i < r && budget > 0; ++i) {
    std::vector<std::string> review;
    const auto l = std::min(len(rng), budget);
    for (std::size_t k = 0; k < l; ++k) review.push_back("w" + std::to_string(word(rng)));
    budget -= l;
    c.push_back(review);
  }
  return c;
}

}  // namespace

TEST_CASE("naive oracle agreement") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const auto c = random_corpus(rng, 20, 1 + trial % 6);
    for (int n = 1; n <= 5; ++n) {
      if (oracle::total(oracle::ngram_counts(c, n)) == 0) {
        CHECK_THROWS_AS(ngram_stats(c, n), UndefinedMetricError);
        continue;
      }
      const auto s = ngram_stats(c, n);
      CHECK(std::abs(s.uniqueness_ratio - oracle::uniqueness_ratio(c, n)) <= 1e-12);
      CHECK(std::abs(s.normalized_entropy - oracle::normalized_entropy(c, n)) <= 1e-12);
    }
  }
}

TEST_CASE("bounds hold over many random corpora") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto c = random_corpus(rng, 40, 1 + trial % 10);
    for (const auto& s : lexical_profile(c)) {
      if (!s) continue;
      CHECK(s->normalized_entropy >= 0.0);
      CHECK(s->normalized_entropy <= 1.0);
      CHECK(s->uniqueness_ratio > 0.0);
      CHECK(s->uniqueness_ratio <= 1.0);
      CHECK(s->unique <= s->total);
    }
  }
}

TEST_CASE("parallel counting matches the serial reference") {
  std::mt19937_64 rng(4);
  std::vector<kernels::IdSequence> seqs(3000);
  for (auto& s : seqs) {
    s.resize(rng() % 30);
    for (auto& id : s) id = static_cast<std::uint32_t>(rng() % 500);
  }
  for (int n = 1; n <= 5; ++n) CHECK(kernels::count_ngrams(seqs, n) == kernels::reference::count_ngrams(seqs, n));
}

TEST_CASE("profile matches per-order stats") {
  const Corpus2 c{{"a", "b", "c", "a", "b"}, {"c", "a"}};
  const auto p = lexical_profile(c);
  for (int n = 1; n <= 5; ++n) {
    const auto& entry = p[static_cast<std::size_t>(n - 1)];
    if (n <= 5 && oracle::total(oracle::ngram_counts(c, n)) > 0) {
      REQUIRE(entry);
      CHECK(*entry == ngram_stats(c, n));
    } else {
      CHECK_FALSE(entry);
    }
  }
}
