#include <doctest.h>

#include <algorithm>
#include <random>

#include "corpus_audit/errors.hpp"
#include "corpus_audit/privacy_content.hpp"

using namespace corpus_audit;

namespace {

MentionSpans rules(const std::string& text) {
  return make_mention_spans(text, RuleExtractor::extract_entities(text), RuleExtractor::extract_nominals(text));
}

std::vector<std::string> entity_texts(const MentionSpans& m) {
  std::vector<std::string> out;
  for (const auto& e : m.entities) out.push_back(e.text);
  return out;
}

}  // namespace

TEST_CASE("table 1 row with sizes and measurements") {
  const auto m = rules("Bought this in XL for my 11yo who is 5'8 and 110.");
  CHECK(m.token_count == 12);
  CHECK(entity_texts(m) == std::vector<std::string>{"XL", "5'8", "110"});
  for (const auto& e : m.entities) CHECK(e.category == "MEASURE");
  CHECK(m.nominals == std::vector<std::string>{"this", "xl", "my", "11yo", "who"});
  CHECK(m.entity_density == doctest::Approx(0.25));
  CHECK(m.nominal_density == doctest::Approx(5.0 / 12.0));
}

TEST_CASE("table 1 row with kinship") {
  const auto m = rules("My granddaughter loves these!");
  CHECK(m.token_count == 4);
  CHECK(m.entities.empty());
  CHECK(m.nominals == std::vector<std::string>{"my", "granddaughter", "these"});
  CHECK(m.entity_density == 0.0);
  CHECK(m.nominal_density == doctest::Approx(0.75));
}

TEST_CASE("no capitals, no numbers") {
  CHECK(rules("great product").entities.empty());
  const auto ok = rules("ok");
  CHECK(ok.nominals.empty());
  CHECK(ok.nominal_density == 0.0);
}

TEST_CASE("capitalized runs") {
  CHECK(entity_texts(rules("We drove to New York City last week.")) == std::vector<std::string>{"New York City"});
  CHECK(entity_texts(rules("Cheaply made. Returned it.")).empty());
  CHECK(entity_texts(rules("Bought at the University of Hawaii store")) ==
        std::vector<std::string>{"University of Hawaii"});
  // A clause break ends a run.
  CHECK(entity_texts(rules("gave one to Anna, Maria got two")) == std::vector<std::string>{"Anna", "Maria"});
  // First-person "I" is not a name.
  CHECK(rules("honestly I think I'm happy").entities.empty());
}

TEST_CASE("measurement patterns") {
  CHECK(entity_texts(rules("it weighs 12 lbs")) == std::vector<std::string>{"12 lbs"});
  CHECK(entity_texts(rules("fits sizes 9 to 10.5 well")) == std::vector<std::string>{"9 to 10.5"});
  CHECK(entity_texts(rules("about 160lbs and a 34in waist")) == std::vector<std::string>{"160lbs", "34in"});
  CHECK(entity_texts(rules("paid $25 for it")) == std::vector<std::string>{"25"});
  CHECK(entity_texts(rules("i ordered a m")).empty());
}

TEST_CASE("overlap resolution keeps the longest span") {
  std::vector<EntitySpan> spans{{"a", "X", 0, 3}, {"b", "X", 2, 10}, {"c", "X", 10, 12}, {"d", "X", 11, 12}};
  const auto kept = resolve_overlaps(spans);
  REQUIRE(kept.size() == 2);
  CHECK(kept[0].begin == 2);
  CHECK(kept[1].begin == 10);
}

TEST_CASE("nominal uniqueness is by lowercased form") {
  const std::vector<std::string> tokens{"My", "my", "MY", "son"};
  CHECK(unique_nominals(tokens) == std::vector<std::string>{"my", "son"});
}

TEST_CASE("corpus statistics") {
  MentionSpans a;
  a.token_count = 12;
  a.entities.resize(3);
  a.entity_density = 0.25;
  const std::vector<MentionSpans> single{a};
  const auto s = content_privacy_stats(single);
  CHECK(s.mean_entity_count == 3.0);
  CHECK(s.max_entity_count == 3.0);
  CHECK(s.mean_entity_density == 0.25);
  CHECK(s.max_entity_density == 0.25);

  MentionSpans b;
  b.token_count = 4;
  MentionSpans empty;
  const std::vector<MentionSpans> pair{b, a, empty};
  const auto p = content_privacy_stats(pair);
  CHECK(p.mean_entity_density == doctest::Approx(0.125));
  CHECK(p.max_entity_density == 0.25);
  CHECK(p.included_reviews == 2);
  CHECK(p.excluded_reviews == 1);

  const std::vector<MentionSpans> none{b, b};
  const auto z = content_privacy_stats(none);
  CHECK(z.mean_entity_count == 0.0);
  CHECK(z.max_entity_count == 0.0);

  const std::vector<MentionSpans> all_empty{empty};
  CHECK_THROWS_AS(content_privacy_stats(all_empty), UndefinedMetricError);
}

TEST_CASE("densities stay in [0,1] and statistics ignore order") {
  std::mt19937_64 rng(5);
  const std::vector<std::string> words{"My", "son", "Tom", "5'8", "XL", "12", "lbs", "to", "14", "New", "York",
                                       "and", "I", "the", "shirt", "of", "Paris", ".", ",", "she", "3yo"};
  std::vector<std::string> texts;
  for (int i = 0; i < 1000; ++i) {
    std::string t;
    const auto n = rng() % 15;
    for (std::size_t k = 0; k < n; ++k) t += words[rng() % words.size()] + (rng() % 4 ? " " : ". ");
    texts.push_back(t);
  }
  RuleExtractor rx;
  const auto mentions = extract_mentions(texts, rx);
  std::vector<MentionSpans> nonempty;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    const auto& m = mentions[i];
    CHECK(m.entity_density >= 0.0);
    CHECK(m.entity_density <= 1.0);
    CHECK(m.nominal_density >= 0.0);
    CHECK(m.nominal_density <= 1.0);
    CHECK(m.entities.size() == RuleExtractor::extract_entities(texts[i]).size());
    for (std::size_t k = 1; k < m.entities.size(); ++k) CHECK(m.entities[k - 1].end <= m.entities[k].begin);
    if (m.token_count > 0) nonempty.push_back(m);
  }
  const auto s = content_privacy_stats(mentions);
  CHECK(s.max_entity_count >= s.mean_entity_count);
  CHECK(s.max_nominal_density >= s.mean_nominal_density);
  auto shuffled = mentions;
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  const auto t = content_privacy_stats(shuffled);
  CHECK(t.mean_entity_density == doctest::Approx(s.mean_entity_density).epsilon(1e-12));
  CHECK(t.max_nominal_count == s.max_nominal_count);
}
