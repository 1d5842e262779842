#include "corpus_audit/audit.hpp"

#include <chrono>
#include <cstdio>
#include <functional>

#include <json.hpp>

#include "corpus_audit/adapter_client.hpp"
#include "corpus_audit/errors.hpp"
#include "corpus_audit/lexical_metrics.hpp"
#include "corpus_audit/preprocess.hpp"

namespace corpus_audit {

using json = nlohmann::ordered_json;

namespace {

constexpr const char* kToolVersion = "1.0.0";

std::string mst_choice_name(MstChoice c) {
  switch (c) {
    case MstChoice::exact: return "exact";
    case MstChoice::knn: return "knn";
    default: return "auto";
  }
}

class StageRunner {
 public:
  StageRunner(MetricReport& report, bool timed) : report_(report), timed_(timed) {}

  // Runs one metric family; metric and backend failures mark the block skipped.
  void run(Block block, const std::function<void()>& body) {
    const auto start = std::chrono::steady_clock::now();
    try {
      body();
    } catch (const BackendError& e) {
      report_.skipped[to_string(block)] = std::string(kBackendFailurePrefix) + e.what();
    } catch (const UndefinedMetricError& e) {
      report_.skipped[to_string(block)] = e.what();
    } catch (const PreconditionError& e) {
      report_.skipped[to_string(block)] = e.what();
    } catch (const DegenerateVectorError& e) {
      report_.skipped[to_string(block)] = e.what();
    } catch (const TrainingError& e) {
      report_.skipped[to_string(block)] = e.what();
    }
    record(to_string(block), start);
  }

  void record(const std::string& name, std::chrono::steady_clock::time_point start) {
    if (!timed_) return;
    const std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - start;
    report_.provenance.timings_ms[name] = ms.count();
  }

 private:
  MetricReport& report_;
  bool timed_;
};

}  // namespace

std::string audit_settings_json(const AuditConfig& c, const std::string& sentiment_backend,
                                const std::string& privacy_backend) {
  json j;
  j["tool"] = "corpus-audit";
  j["version"] = kToolVersion;
  j["embedding"] = {{"algorithm", "skipgram-negative-sampling"},
                    {"window", c.embedding.window},
                    {"dimension", c.embedding.dimension},
                    {"epochs", c.embedding.epochs},
                    {"negative_samples", c.embedding.negative_samples},
                    {"min_count", c.embedding.min_count},
                    {"learning_rate", c.embedding.initial_learning_rate},
                    {"seed", c.embedding.rng_seed}};
  j["semantic"] = {{"mst", mst_choice_name(c.semantic.mst)},
                   {"knn_k", c.semantic.knn_k},
                   {"exact_cap", c.semantic.exact_cap}};
  j["sentiment"] = {{"backend", sentiment_backend},
                    {"allow_empty_segments", c.allow_empty_segments},
                    {"benchmark", c.benchmark},
                    {"tie_break", "negative"}};
  j["privacy"] = {{"backend", privacy_backend}};
  j["outliers"] = {{"theta_g", c.outliers.theta_g}, {"theta_l", c.outliers.theta_l}};
  j["stopwords"] = c.stopwords ? c.stopwords->string() : std::string("bundled");
  return j.dump();
}

AuditResult audit(const Corpus& corpus, const AuditConfig& config) {
  std::shared_ptr<AdapterClient> adapter;
  if (config.sentiment_backend == "adapter" || config.privacy_backend == "adapter") {
    adapter = make_adapter_client(config.adapter_cmd);
  }
  std::unique_ptr<SentimentBackend> sentiment;
  if (config.sentiment_backend == "lexicon") {
    sentiment = std::make_unique<LexiconSentiment>();
  } else if (config.sentiment_backend == "adapter") {
    sentiment = std::make_unique<AdapterSentiment>(adapter);
  } else {
    throw ConfigError("unknown sentiment backend '" + config.sentiment_backend + "'");
  }
  std::unique_ptr<MentionExtractor> extractor;
  if (config.privacy_backend == "rules") {
    extractor = std::make_unique<RuleExtractor>();
  } else if (config.privacy_backend == "adapter") {
    extractor = std::make_unique<AdapterExtractor>(adapter);
  } else {
    throw ConfigError("unknown privacy backend '" + config.privacy_backend + "'");
  }
  return audit(corpus, config, *sentiment, *extractor);
}

AuditResult audit(const Corpus& corpus, const AuditConfig& config, SentimentBackend& sentiment,
                  MentionExtractor& extractor) {
  config.embedding.validate();
  if (corpus.reviews.empty()) throw PreconditionError("cannot audit an empty corpus");
  const StopwordSet stopwords = stopword_set(config.stopwords);

  AuditResult result;
  MetricReport& report = result.report;
  report.input = {corpus.source_label, corpus.size(), corpus.empty_text_count()};
  report.provenance.seed = config.embedding.rng_seed;
  report.provenance.settings_json = audit_settings_json(config, sentiment.name(), extractor.name());
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(fnv1a64(report.provenance.settings_json)));
  report.provenance.config_hash = hash;

  StageRunner stages(report, config.record_timings);
  const std::size_t n = corpus.size();
  std::vector<std::string> texts(n);
  std::vector<int> ratings(n);
  std::vector<std::vector<std::string>> content(n);
  const auto t0 = std::chrono::steady_clock::now();
#pragma omp parallel for schedule(dynamic, 512)
  for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(n); ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    texts[i] = corpus.reviews[i].text;
    ratings[i] = corpus.reviews[i].rating;
    content[i] = tokenize(texts[i], stopwords).tokens_content;
  }
  stages.record("preprocess", t0);

  stages.run(Block::lexical, [&] {
    LexicalBlock block{lexical_profile(content)};
    if (!block.orders[0]) throw UndefinedMetricError("no content tokens; lexical metrics undefined for every n");
    report.lexical = block;
  });

  std::vector<std::optional<Vector>> vectors;
  std::string embedding_failure;
  const auto t1 = std::chrono::steady_clock::now();
  try {
    result.model = train_word_embeddings(content, config.embedding);
    vectors.resize(n);
#pragma omp parallel for schedule(dynamic, 512)
    for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(n); ++ii) {
      const auto i = static_cast<std::size_t>(ii);
      vectors[i] = embed_review(*result.model, content[i]);
    }
  } catch (const TrainingError& e) {
    embedding_failure = std::string("embedding training failed: ") + e.what();
  }
  stages.record("embedding", t1);

  stages.run(Block::semantic, [&] {
    if (!embedding_failure.empty()) throw UndefinedMetricError(embedding_failure);
    report.semantic = semantic_metrics(vectors, config.semantic);
  });

  stages.run(Block::sentiment, [&] {
    const auto labels = sentiment.classify(texts);
    if (labels.size() != n) throw BackendError("sentiment backend returned a wrong label count");
    auto profile = sentiment_profile(ratings, labels, config.allow_empty_segments, config.benchmark);
    profile.backend = sentiment.name();
    report.sentiment = profile;
  });

  stages.run(Block::privacy, [&] {
    result.mentions = extract_mentions(texts, extractor);
    report.privacy = PrivacyBlock{content_privacy_stats(result.mentions), extractor.name()};
  });

  stages.run(Block::outliers, [&] {
    if (!embedding_failure.empty()) throw UndefinedMetricError(embedding_failure);
    result.outliers = detect_outliers(build_user_profiles(corpus, vectors), config.outliers);
    report.outliers = result.outliers->report;
  });
  return result;
}

}  // namespace corpus_audit
