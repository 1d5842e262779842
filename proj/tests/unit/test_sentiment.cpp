#include <doctest.h>

#include <random>

#include "corpus_audit/errors.hpp"
#include "corpus_audit/sentiment_metrics.hpp"

using namespace corpus_audit;

TEST_CASE("published segment rates give the published score") {
  const std::vector<double> y{0.1128, 0.1709, 0.3262, 0.7032, 0.9309};
  // mean of 1 - |y - benchmark|, evaluated independently
  CHECK(sentiment_diversity(y, kLinearBenchmark) == doctest::Approx(0.9036800000000001).epsilon(1e-12));
}

TEST_CASE("score is one exactly at the benchmark") {
  const std::vector<double> y(kLinearBenchmark.begin(), kLinearBenchmark.end());
  CHECK(sentiment_diversity(y, kLinearBenchmark) == 1.0);
  CHECK(sentiment_diversity(std::vector<double>{0.1, 0.25, 0.5, 0.75, 1.0}, kLinearBenchmark) < 1.0);
}

TEST_CASE("benchmark is linear with step 0.25") {
  for (std::size_t i = 0; i + 1 < kRatingLevels; ++i) CHECK(kLinearBenchmark[i + 1] - kLinearBenchmark[i] == 0.25);
}

TEST_CASE("range and monotonicity") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<double> y(5);
    for (auto& v : y) v = u(rng);
    const double d = sentiment_diversity(y, kLinearBenchmark);
    CHECK(d >= 0.0);
    CHECK(d <= 1.0);
    auto closer = y;
    const auto i = rng() % 5;
    closer[i] += (kLinearBenchmark[i] - closer[i]) * u(rng);
    CHECK(sentiment_diversity(closer, kLinearBenchmark) >= d - 1e-15);
  }
}

TEST_CASE("empty segment handling") {
  const std::vector<int> ratings{1, 3, 4, 5};
  const std::vector<Sentiment> labels{Sentiment::negative, Sentiment::positive, Sentiment::positive,
                                      Sentiment::positive};
  try {
    segment_positive_rates(ratings, labels, false);
    FAIL("expected an empty segment error");
  } catch (const EmptySegmentError& e) {
    CHECK(e.rating() == 2);
  }
  const auto rates = segment_positive_rates(ratings, labels, true);
  CHECK_FALSE(rates.y[1]);
  CHECK(rates.y[0] == 0.0);
  CHECK(rates.y[2] == 1.0);
  // Present segments: 1 - |0-0|, 1 - |1-0.5|, 1 - |1-0.75|, 1 - |1-1| -> (1 + 0.5 + 0.75 + 1) / 4
  CHECK(sentiment_diversity(rates.y, kLinearBenchmark) == doctest::Approx(0.8125));
  const std::array<std::optional<double>, 5> none{};
  CHECK_THROWS_AS(sentiment_diversity(none, kLinearBenchmark), UndefinedMetricError);
}

TEST_CASE("segment rates count positives per rating") {
  const std::vector<int> ratings{1, 1, 2, 2, 3, 3, 4, 4, 5, 5};
  std::vector<Sentiment> labels(10, Sentiment::negative);
  labels[3] = labels[5] = labels[6] = labels[7] = labels[8] = labels[9] = Sentiment::positive;
  const auto p = sentiment_profile(ratings, labels, false);
  CHECK(*p.y[0] == 0.0);
  CHECK(*p.y[1] == 0.5);
  CHECK(*p.y[2] == 0.5);
  CHECK(*p.y[3] == 1.0);
  CHECK(*p.y[4] == 1.0);
  CHECK(p.segment_counts[0] == 2);
  CHECK(p.d_sen == doctest::Approx((1.0 + 0.75 + 1.0 + 0.75 + 1.0) / 5));
}

TEST_CASE("lexicon classifier") {
  LexiconSentiment lex;
  CHECK(lex.classify_one("I love this baseball cap, fits perfectly!") == Sentiment::positive);
  CHECK(lex.classify_one("Broke after two days. Terrible.") == Sentiment::negative);
  CHECK(lex.classify_one("not good at all") == Sentiment::negative);
  CHECK(lex.classify_one("I don't love it") == Sentiment::negative);
  CHECK(lex.classify_one("I don\xE2\x80\x99t love it") == Sentiment::negative);
  CHECK(lex.classify_one("never had a bad day with it") == Sentiment::positive);
  CHECK(lex.score("GREAT") == 1);
  // Zero score falls to negative.
  CHECK(lex.classify_one("") == Sentiment::negative);
  CHECK(lex.classify_one("it is a shirt") == Sentiment::negative);
  CHECK(lex.classify_one("good and bad") == Sentiment::negative);
}

TEST_CASE("batch classification matches single calls") {
  LexiconSentiment lex;
  std::vector<std::string> texts;
  for (int i = 0; i < 500; ++i) texts.push_back(i % 3 ? "great soft shirt" : "cheap flimsy zipper");
  const auto labels = lex.classify(texts);
  for (std::size_t i = 0; i < texts.size(); ++i) CHECK(labels[i] == lex.classify_one(texts[i]));
  CHECK(classify_sentiment("love it", lex) == Sentiment::positive);
}

TEST_CASE("corpus overload") {
  Corpus c;
  c.reviews = {{"u", 1, "awful"}, {"u", 2, "bad"}, {"u", 3, "fine"}, {"u", 4, "good"}, {"u", 5, "love"}};
  LexiconSentiment lex;
  const auto r = segment_positive_rates(c, lex, false);
  CHECK(*r.y[0] == 0.0);
  CHECK(*r.y[4] == 1.0);
}
