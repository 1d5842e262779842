#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "corpus_audit/errors.hpp"
#include "corpus_audit/preprocess.hpp"

using namespace corpus_audit;

TEST_CASE("table 1 token counts") {
  CHECK(tokenize("My granddaughter loves these!").content_token_count == 4);
  CHECK(tokenize("Bought this in XL for my 11yo who is 5'8 and 110.").content_token_count == 12);
}

TEST_CASE("empty text") {
  const auto t = tokenize("");
  CHECK(t.content_token_count == 0);
  CHECK(t.tokens_cased.empty());
  CHECK(t.tokens_content.empty());
}

TEST_CASE("joined tokens survive as one token") {
  const auto t = tokenize("Bought large/extra-large for my 11yo, she is 5'8.");
  const std::vector<std::string> expected{"Bought", "large/extra-large", "for", "my", "11yo", "she", "is", "5'8"};
  CHECK(t.tokens_cased == expected);
}

TEST_CASE("punctuation-only pieces are not tokens") {
  const auto t = tokenize("Great -- really ... great !!");
  CHECK(t.content_token_count == 3);
  CHECK(is_punctuation_only("--"));
  CHECK_FALSE(is_punctuation_only("a-"));
}

TEST_CASE("unicode whitespace splits tokens") {
  CHECK(tokenize("soft\xC2\xA0shirt\xE2\x80\x83" "fits").content_token_count == 3);
}

TEST_CASE("sentence-initial flags") {
  const auto tokens = scan_tokens("Nice one. Tom liked it! And so");
  REQUIRE(tokens.size() == 7);
  CHECK(tokens[0].sentence_initial);
  CHECK_FALSE(tokens[1].sentence_initial);
  CHECK(tokens[1].closes_clause);
  CHECK(tokens[2].sentence_initial);
  CHECK(tokens[5].sentence_initial);
}

TEST_CASE("default stopwords") {
  const auto& s = default_stopwords();
  CHECK(s.contains("the"));
  CHECK(s.contains("is"));
  CHECK(s.contains("at"));
  CHECK(s.contains("The"));
  CHECK(s.size() > 150);
}

TEST_CASE("stopword override file") {
  const auto path = std::filesystem::temp_directory_path() / "stopwords_override.txt";
  std::ofstream(path) << "foo\n";
  const auto s = stopword_set(path);
  CHECK(s.size() == 1);
  CHECK(s.contains("FOO"));
  std::filesystem::remove(path);
  CHECK_THROWS_AS(stopword_set(std::filesystem::path("/nonexistent/stop.txt")), IoError);
}

TEST_CASE("content tokens are lowercased without stopwords") {
  const auto t = tokenize("The Shirt is at THE door");
  const std::vector<std::string> expected{"shirt", "door"};
  CHECK(t.tokens_content == expected);
}

TEST_CASE("dedup normalization") {
  CHECK(normalize_for_dedup("Great  product!!") == normalize_for_dedup("great product"));
  CHECK(normalize_for_dedup("A, B") == "a b");
}

namespace {

std::string random_text(std::mt19937_64& rng) {
  static const std::string alphabet = "abcXYZ09 .,!?'-\"()\n\t";
  std::uniform_int_distribution<std::size_t> len(0, 40), ch(0, alphabet.size() - 1);
  std::string s;
  const auto n = len(rng);
  for (std::size_t i = 0; i < n; ++i) s += alphabet[ch(rng)];
  return s;
}

}  // namespace

TEST_CASE("properties over random texts") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 2000; ++i) {
    const auto a = random_text(rng);
    const auto b = random_text(rng);
    const auto ta = tokenize(a);
    CHECK(ta.tokens_content.size() <= ta.tokens_cased.size());
    CHECK(ta.content_token_count == ta.tokens_cased.size());
    CHECK(tokenize(a + " " + b).content_token_count == ta.content_token_count + tokenize(b).content_token_count);
    CHECK(tokenize(a).tokens_content == ta.tokens_content);
  }
}
