#include <doctest.h>

#include <filesystem>

#include "corpus_audit/corpus_io.hpp"
#include "corpus_audit/errors.hpp"

using namespace corpus_audit;

TEST_CASE("csv load keeps record order") {
  const auto c = parse_corpus_csv("user_id,rating,review\nu1,5,first\nu2,3,second\nu3,1,third\n");
  REQUIRE(c.size() == 3);
  CHECK(c.reviews[0] == Review{"u1", 5, "first"});
  CHECK(c.reviews[1] == Review{"u2", 3, "second"});
  CHECK(c.reviews[2] == Review{"u3", 1, "third"});
}

TEST_CASE("rating outside 1..5 is a record error with its line") {
  try {
    parse_corpus_csv("user_id,rating,review\nu1,5,ok\nu2,6,bad\n");
    FAIL("expected a record error");
  } catch (const RecordError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("ratings accept x.0 and reject fractions") {
  CHECK(parse_rating("5") == 5);
  CHECK(parse_rating("5.0") == 5);
  CHECK(parse_rating(" 2.00 ") == 2);
  CHECK_FALSE(parse_rating("4.5"));
  CHECK_FALSE(parse_rating("0"));
  CHECK_FALSE(parse_rating("five"));
  CHECK_FALSE(parse_rating(""));
  CHECK_THROWS_AS(parse_corpus_csv("user_id,rating,review\nu1,4.5,meh\n"), RecordError);
}

TEST_CASE("jsonl line becomes one review") {
  const auto c = parse_corpus_jsonl(R"({"user_id":"u1","rating":5,"review":"ok"})");
  REQUIRE(c.size() == 1);
  CHECK(c.reviews[0] == Review{"u1", 5, "ok"});
}

TEST_CASE("jsonl errors") {
  CHECK_THROWS_AS(parse_corpus_jsonl(R"({"user_id":"u1","review":"ok"})"), SchemaError);
  CHECK_THROWS_AS(parse_corpus_jsonl("{\"user_id\":\"u1\",\"rating\":5,\"review\":\"ok\"}\n{\"user_id\":\"u2\",\"rating\":7,\"review\":\"x\"}"),
                  RecordError);
  CHECK_THROWS_AS(parse_corpus_jsonl("not json"), SchemaError);
}

TEST_CASE("missing column names the column") {
  try {
    parse_corpus_csv("user_id,review\nu1,text\n");
    FAIL("expected a schema error");
  } catch (const SchemaError& e) {
    CHECK(std::string(e.what()).find("rating") != std::string::npos);
  }
}

TEST_CASE("rfc 4180 quoting") {
  const auto c = parse_corpus_csv("user_id,rating,review\r\nu1,4,\"line one\nline \"\"two\"\", with comma\"\r\n");
  REQUIRE(c.size() == 1);
  CHECK(c.reviews[0].text == "line one\nline \"two\", with comma");
  CHECK_THROWS_AS(parse_corpus_csv("user_id,rating,review\nu1,4,\"unterminated\n"), RecordError);
}

TEST_CASE("columns in any order, extra columns ignored") {
  const auto c = parse_corpus_csv("review,extra,rating,user_id\nhello,x,2,u9\n");
  CHECK(c.reviews.at(0) == Review{"u9", 2, "hello"});
}

TEST_CASE("empty review text is accepted and flagged") {
  const auto c = parse_corpus_csv("user_id,rating,review\nu1,4,\nu2,5,fine\n");
  CHECK(c.size() == 2);
  CHECK(c.reviews[0].empty_text());
  CHECK(c.empty_text_count() == 1);
}

TEST_CASE("empty user id is rejected") {
  CHECK_THROWS_AS(parse_corpus_csv("user_id,rating,review\n,4,text\n"), RecordError);
}

TEST_CASE("write then load is the identity, and loading twice agrees") {
  Corpus c;
  c.reviews = {{"a", 1, "plain"}, {"b,c", 5, "has \"quotes\", commas\nand newline"}, {"d", 3, ""}};
  const auto path = std::filesystem::temp_directory_path() / "corpus_io_roundtrip.csv";
  write_corpus_csv(c, path);
  const auto first = load_corpus(path);
  const auto second = load_corpus(path);
  CHECK(first.reviews == c.reviews);
  CHECK(first.reviews == second.reviews);
  std::filesystem::remove(path);
}

TEST_CASE("unreadable file is an io error") {
  CHECK_THROWS_AS(load_corpus("/nonexistent/dir/file.csv"), IoError);
}

TEST_CASE("format from extension") {
  CHECK(corpus_format_from_path("x.jsonl") == CorpusFormat::jsonl);
  CHECK(corpus_format_from_path("x.csv") == CorpusFormat::csv);
}
