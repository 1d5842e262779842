#include <doctest.h>

#include <filesystem>

#include <json.hpp>

#include "corpus_audit/audit.hpp"
#include "corpus_audit/errors.hpp"
#include "corpus_audit/report.hpp"
#include "corpus_audit/synthetic.hpp"

using namespace corpus_audit;

namespace {

AuditConfig quick_config() {
  AuditConfig c;
  c.embedding.dimension = 20;
  c.embedding.epochs = 3;
  return c;
}

Corpus small_corpus(std::size_t n = 100, std::uint64_t seed = 3) {
  SyntheticOptions o;
  o.reviews = n;
  o.reviews_per_user = 2;
  o.seed = seed;
  return synthetic_corpus(o);
}

}  // namespace

TEST_CASE("fnv-1a reference values") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("audit of a small corpus fills every block") {
  const auto r = audit(small_corpus(), quick_config());
  const auto& rep = r.report;
  CHECK(rep.skipped.empty());
  REQUIRE(rep.lexical);
  REQUIRE(rep.semantic);
  REQUIRE(rep.sentiment);
  REQUIRE(rep.privacy);
  REQUIRE(rep.outliers);
  CHECK(rep.input.reviews == 100);
  CHECK(rep.outliers->user_count + rep.outliers->excluded_users == 50);
  CHECK(rep.sentiment->d_sen > 0.0);
  CHECK(rep.sentiment->d_sen <= 1.0);
  CHECK(r.mentions.size() == 100);
  CHECK(rep.provenance.config_hash.size() == 16);
  CHECK(rep.provenance.timings_ms.empty());
  CHECK_FALSE(rep.backend_failure());
}

TEST_CASE("json round trip and byte-identical reruns") {
  const auto corpus = small_corpus();
  const auto a = audit(corpus, quick_config()).report;
  const auto b = audit(corpus, quick_config()).report;
  const auto ja = report_to_json(a);
  CHECK(ja == report_to_json(b));
  const auto back = report_from_json(ja);
  CHECK(report_to_json(back) == ja);
  CHECK(back.lexical == a.lexical);
  CHECK(back.outliers == a.outliers);
  const auto j = nlohmann::json::parse(ja);
  CHECK(j["schema_version"] == kReportSchemaVersion);
  CHECK(j["lexical"]["n1"].contains("L_r"));
  CHECK(j["provenance"]["settings"]["embedding"]["dimension"] == 20);
}

TEST_CASE("changing a setting changes the hash") {
  const auto corpus = small_corpus(40);
  auto c = quick_config();
  const auto a = audit(corpus, c).report.provenance.config_hash;
  c.outliers.theta_g = -1.5;
  CHECK(audit(corpus, c).report.provenance.config_hash != a);
}

TEST_CASE("empty rating segment skips sentiment only") {
  auto corpus = small_corpus();
  std::erase_if(corpus.reviews, [](const Review& r) { return r.rating == 2; });
  const auto r = audit(corpus, quick_config()).report;
  CHECK_FALSE(r.sentiment);
  REQUIRE(r.skipped.count("sentiment"));
  CHECK(r.skipped.at("sentiment").find("rating 2") != std::string::npos);
  CHECK(r.lexical);
  CHECK(r.outliers);
  const auto j = nlohmann::json::parse(report_to_json(r));
  CHECK(j["sentiment"].is_null());
  CHECK(report_from_json(report_to_json(r)) == r);

  auto allow = quick_config();
  allow.allow_empty_segments = true;
  const auto ok = audit(corpus, allow).report;
  REQUIRE(ok.sentiment);
  CHECK_FALSE(ok.sentiment->y[1]);
}

TEST_CASE("an empty corpus is rejected") {
  CHECK_THROWS_AS(audit(Corpus{}, quick_config()), PreconditionError);
}

TEST_CASE("csv rendering") {
  MetricReport r;
  r.input.reviews = 3;
  LexicalBlock lex;
  lex.orders[0] = NgramStats{1, 4, 3, 0.75, 0.9463946303571863};
  r.lexical = lex;
  r.skipped["semantic"] = "no vectors";
  const auto csv = report_to_csv(r);
  CHECK(csv.rfind("metric,value\n", 0) == 0);
  CHECK(csv.find("lexical.n1.L_r,0.75\n") != std::string::npos);
  CHECK(csv.find("lexical.n2.L_r,\n") != std::string::npos);
  CHECK(csv.find("semantic.avg_mst_edge_length,\n") != std::string::npos);
}

TEST_CASE("schema violations are reported") {
  CHECK_THROWS_AS(report_from_json("{"), SchemaError);
  CHECK_THROWS_AS(report_from_json(R"({"schema_version": 99})"), SchemaError);
}

TEST_CASE("comparing reports") {
  const auto corpus = small_corpus();
  const auto a = audit(corpus, quick_config()).report;
  const std::vector<MetricReport> same{a, a};
  const std::vector<std::string> labels{"real", "synthetic"};
  const auto t = compare(same, labels);
  CHECK(t.labels == labels);
  for (const auto& row : t.rows) {
    REQUIRE(row.values.size() == 2);
    CHECK(row.values[0] == row.values[1]);
  }
  const auto csv = comparison_csv(t);
  CHECK(csv.rfind("metric,real,synthetic,delta synthetic\n", 0) == 0);
  CHECK(csv.find("lexical.n1.L_r,") != std::string::npos);

  auto missing = a;
  missing.semantic.reset();
  missing.skipped["semantic"] = "x";
  const std::vector<MetricReport> mixed{a, missing};
  const auto md = comparison_markdown(compare(mixed, labels));
  CHECK(md.find("| metric | real | synthetic | delta synthetic |") != std::string::npos);
  CHECK(md.find("\xE2\x80\x94") != std::string::npos);

  const std::vector<MetricReport> one{a};
  CHECK_THROWS_AS(compare(one, std::vector<std::string>{"x"}), PreconditionError);
}

TEST_CASE("reports survive a trip through disk") {
  const auto a = audit(small_corpus(60), quick_config()).report;
  const auto path = std::filesystem::temp_directory_path() / "ca_report_test.json";
  write_report(a, path, ReportFormat::json);
  CHECK(load_report(path) == a);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_report(path), IoError);
}

TEST_CASE("timings only when asked") {
  auto c = quick_config();
  c.record_timings = true;
  const auto r = audit(small_corpus(40), c).report;
  CHECK_FALSE(r.provenance.timings_ms.empty());
}
