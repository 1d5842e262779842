#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "corpus_audit/audit.hpp"
#include "corpus_audit/completion_clients.hpp"
#include "corpus_audit/corpus_io.hpp"
#include "corpus_audit/errors.hpp"
#include "corpus_audit/preprocess.hpp"
#include "corpus_audit/prompt_optimizer.hpp"
#include "corpus_audit/report.hpp"

namespace fs = std::filesystem;
using namespace corpus_audit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitSchema = 2;
constexpr int kExitBackend = 3;

struct AuditArgs {
  std::string in;
  std::string out;
  std::string format;
  std::string stopwords;
  std::string mst = "auto";
  std::size_t knn_k = kDefaultKnnK;
  double theta_g = kDefaultThetaGlobal;
  double theta_l = kDefaultThetaLocal;
  std::string sentiment_backend = "lexicon";
  std::string privacy_backend = "rules";
  std::string adapter_cmd;
  std::uint64_t seed = 1;
  int epochs = 5;
  int dimension = 100;
  int window = 5;
  bool allow_empty_segments = false;
  bool timings = false;
  std::string spans_out;
  std::string sentiment_curve_out;
  std::string dnn_curves_out;
  std::string model_out;
};

struct CompareArgs {
  std::vector<std::string> reports;
  std::string format = "md";
  std::string out;
};

struct GenerateArgs {
  std::string config;
  std::string backend = "mock";
  std::string out;
  std::string mock_mode = "varied";
  std::optional<int> max_cycles;
};

struct OutlierArgs {
  std::string in;
  std::string out;
  std::vector<double> thetas{-2.0, -2.5, -3.0, -3.5, -4.0, -4.5, -5.0};
  double theta_l = kDefaultThetaLocal;
  std::string stopwords;
  std::uint64_t seed = 1;
};

MstChoice parse_mst_choice(const std::string& s) {
  if (s == "auto") return MstChoice::automatic;
  if (s == "exact") return MstChoice::exact;
  if (s == "knn") return MstChoice::knn;
  throw ConfigError("--mst must be exact, knn or auto");
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string sentiment_curve_csv(const SentimentProfile& p) {
  std::string out = "rating,positive_rate,benchmark,count\n";
  for (std::size_t i = 0; i < kRatingLevels; ++i) {
    out += std::to_string(i + 1) + "," + (p.y[i] ? fmt(*p.y[i]) : std::string()) + "," + fmt(p.benchmark[i]) + "," +
           std::to_string(p.segment_counts[i]) + "\n";
  }
  return out;
}

std::string curves_csv(const std::vector<DnnCurve>& curves) {
  std::string out = "theta_g,rank,d_nn\n";
  for (const auto& c : curves) {
    for (std::size_t r = 0; r < c.d_nn.size(); ++r) out += fmt(c.theta_g) + "," + std::to_string(r + 1) + "," + fmt(c.d_nn[r]) + "\n";
  }
  return out;
}

std::string spans_jsonl(const Corpus& corpus, const std::vector<MentionSpans>& mentions) {
  std::string out;
  for (std::size_t i = 0; i < mentions.size(); ++i) {
    const auto& m = mentions[i];
    nlohmann::ordered_json line;
    line["index"] = i;
    line["user_id"] = corpus.reviews[i].user_id;
    line["tokens"] = m.token_count;
    auto ents = nlohmann::ordered_json::array();
    for (const auto& e : m.entities) {
      ents.push_back({{"text", e.text}, {"category", e.category}, {"begin", e.begin}, {"end", e.end}});
    }
    line["entities"] = ents;
    line["nominals"] = m.nominals;
    line["entity_density"] = m.entity_density;
    line["nominal_density"] = m.nominal_density;
    out += line.dump() + "\n";
  }
  return out;
}

int run_audit(const AuditArgs& a) {
  Corpus corpus = load_corpus(a.in);
  if (corpus.source_label.empty()) corpus.source_label = fs::path(a.in).filename().string();
  AuditConfig config;
  config.embedding.rng_seed = a.seed;
  config.embedding.epochs = a.epochs;
  config.embedding.dimension = a.dimension;
  config.embedding.window = a.window;
  config.semantic.mst = parse_mst_choice(a.mst);
  config.semantic.knn_k = a.knn_k;
  config.outliers = {a.theta_g, a.theta_l};
  config.allow_empty_segments = a.allow_empty_segments;
  if (!a.stopwords.empty()) config.stopwords = a.stopwords;
  config.sentiment_backend = a.sentiment_backend;
  config.privacy_backend = a.privacy_backend;
  config.adapter_cmd = a.adapter_cmd;
  config.record_timings = a.timings;

  const AuditResult result = audit(corpus, config);
  std::string format = a.format;
  if (format.empty()) format = fs::path(a.out).extension() == ".csv" ? "csv" : "json";
  write_report(result.report, a.out, format == "csv" ? ReportFormat::csv : ReportFormat::json);
  if (!a.spans_out.empty() && result.report.privacy) write_file(a.spans_out, spans_jsonl(corpus, result.mentions));
  if (!a.sentiment_curve_out.empty() && result.report.sentiment) {
    write_file(a.sentiment_curve_out, sentiment_curve_csv(*result.report.sentiment));
  }
  if (!a.dnn_curves_out.empty() && result.outliers) {
    const std::vector<double> thetas{-2.0, -2.5, -3.0, -3.5, -4.0, -4.5, -5.0};
    write_file(a.dnn_curves_out, curves_csv(d_nn_curves(*result.outliers, thetas)));
  }
  if (!a.model_out.empty() && result.model) save_model(*result.model, a.model_out);
  for (const auto& [block, reason] : result.report.skipped) std::cerr << "skipped " << block << ": " << reason << "\n";
  return result.report.backend_failure() ? kExitBackend : kExitOk;
}

int run_compare(const CompareArgs& a) {
  std::vector<MetricReport> reports;
  std::vector<std::string> labels;
  for (const auto& path : a.reports) {
    reports.push_back(load_report(path));
    labels.push_back(fs::path(path).stem().string());
  }
  const auto table = compare(reports, labels);
  const std::string text = a.format == "csv" ? comparison_csv(table) : comparison_markdown(table);
  if (a.out.empty()) {
    std::cout << text;
  } else {
    write_file(a.out, text);
  }
  return kExitOk;
}

int run_generate(const GenerateArgs& a) {
  GenerationConfig config = a.config.empty() ? GenerationConfig{} : load_generation_config(a.config);
  if (a.max_cycles) config.max_cycles = *a.max_cycles;
  std::unique_ptr<CompletionClient> client;
  if (a.backend == "mock") {
    MockOptions mock;
    mock.seed = config.rng_seed;
    mock.fallback_count = config.batch_size;
    if (a.mock_mode == "constant") {
      mock.mode = MockMode::constant;
    } else if (a.mock_mode != "varied") {
      throw ConfigError("--mock-mode must be varied or constant");
    }
    client = std::make_unique<MockClient>(mock);
  } else if (a.backend == "http") {
    client = std::make_unique<HttpCompletionClient>(config.endpoint_url, config.endpoint_timeout_seconds);
  } else {
    throw ConfigError("--backend must be mock or http");
  }
  LexiconSentiment sentiment;
  const auto result = run_loop(*client, config, sentiment, [](const CycleRecord& rec, const PromptState&) {
    std::cerr << "cycle " << rec.cycle << ": ";
    if (!rec.parsed) {
      std::cerr << "parse failure (" << rec.parse_error << ")\n";
      return;
    }
    std::cerr << rec.batch_size << " reviews;";
    for (std::size_t d = 0; d < kDimensionCount; ++d) {
      const auto& v = rec.verdicts->verdicts[d];
      std::cerr << " " << to_string(static_cast<Dimension>(d)) << "=" << (v.pass ? "pass" : "FAIL");
    }
    std::cerr << "\n";
  });
  write_dataset_jsonl(result.dataset, a.out);
  std::cerr << "accumulated " << result.dataset.reviews.size() << " reviews over " << result.dataset.cycles.size()
            << " cycle(s)\n";
  if (result.dataset.aborted) {
    std::cerr << "aborted: " << result.dataset.abort_reason << "\n";
    return kExitBackend;
  }
  return kExitOk;
}

int run_outliers(const OutlierArgs& a) {
  const Corpus corpus = load_corpus(a.in);
  const StopwordSet stopwords = stopword_set(a.stopwords.empty() ? std::nullopt : std::optional<fs::path>(a.stopwords));
  std::vector<std::vector<std::string>> content;
  content.reserve(corpus.size());
  for (const auto& r : corpus.reviews) content.push_back(tokenize(r.text, stopwords).tokens_content);
  EmbeddingConfig ec;
  ec.rng_seed = a.seed;
  const auto model = train_word_embeddings(content, ec);
  std::vector<std::optional<Vector>> vectors;
  vectors.reserve(content.size());
  for (const auto& c : content) vectors.push_back(embed_review(model, c));
  const double lowest = *std::min_element(a.thetas.begin(), a.thetas.end());
  const auto analysis = detect_outliers(build_user_profiles(corpus, vectors), {lowest, a.theta_l});
  write_file(a.out, curves_csv(d_nn_curves(analysis, a.thetas)));
  for (const auto& c : d_nn_curves(analysis, a.thetas)) {
    const auto above = std::count_if(c.d_nn.begin(), c.d_nn.end(), [&](double d) { return d >= a.theta_l; });
    std::cout << "theta_g=" << c.theta_g << " candidates=" << c.d_nn.size() << " outliers=" << above << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Corpus diversity and privacy auditing"};
  app.require_subcommand(1);

  AuditArgs audit_args;
  auto* audit_cmd = app.add_subcommand("audit", "Compute all metrics for one corpus");
  audit_cmd->add_option("--in", audit_args.in, "Input corpus (.csv or .jsonl)")->required();
  audit_cmd->add_option("--out", audit_args.out, "Report path")->required();
  audit_cmd->add_option("--format", audit_args.format, "json or csv (default: from --out extension)")
      ->check(CLI::IsMember({"json", "csv"}));
  audit_cmd->add_option("--stopwords", audit_args.stopwords, "Stopword list override");
  audit_cmd->add_option("--mst", audit_args.mst, "exact, knn or auto")->check(CLI::IsMember({"exact", "knn", "auto"}));
  audit_cmd->add_option("--knn-k", audit_args.knn_k, "Neighbors per review in k-NN mode");
  audit_cmd->add_option("--theta-g", audit_args.theta_g, "Global z-score threshold");
  audit_cmd->add_option("--theta-l", audit_args.theta_l, "Local nearest-neighbor threshold");
  audit_cmd->add_option("--sentiment-backend", audit_args.sentiment_backend)->check(CLI::IsMember({"lexicon", "adapter"}));
  audit_cmd->add_option("--privacy-backend", audit_args.privacy_backend)->check(CLI::IsMember({"rules", "adapter"}));
  audit_cmd->add_option("--adapter-cmd", audit_args.adapter_cmd, "Command that starts the model adapter (stdio)");
  audit_cmd->add_option("--seed", audit_args.seed, "Embedding seed");
  audit_cmd->add_option("--epochs", audit_args.epochs);
  audit_cmd->add_option("--dim", audit_args.dimension);
  audit_cmd->add_option("--window", audit_args.window);
  audit_cmd->add_flag("--allow-empty-segments", audit_args.allow_empty_segments,
                      "Average D_sen over the rating segments that have reviews");
  audit_cmd->add_flag("--timings", audit_args.timings, "Record stage timings in provenance");
  audit_cmd->add_option("--spans-out", audit_args.spans_out, "Per-review mention spans (JSONL)");
  audit_cmd->add_option("--sentiment-curve-out", audit_args.sentiment_curve_out, "Positive rate per rating (CSV)");
  audit_cmd->add_option("--dnn-curves-out", audit_args.dnn_curves_out, "Sorted d_nn curves (CSV)");
  audit_cmd->add_option("--model-out", audit_args.model_out, "Trained word vectors (text format)");

  CompareArgs compare_args;
  auto* compare_cmd = app.add_subcommand("compare", "Side-by-side table of audit reports");
  compare_cmd->add_option("reports", compare_args.reports, "Report JSON files")->required()->expected(2, -1);
  compare_cmd->add_option("--format", compare_args.format)->check(CLI::IsMember({"csv", "md"}));
  compare_cmd->add_option("--out", compare_args.out, "Output file (default: stdout)");

  GenerateArgs gen_args;
  auto* gen_cmd = app.add_subcommand("generate", "Run the evaluation-guided generation loop");
  gen_cmd->add_option("--config", gen_args.config, "Generation config (JSON)");
  gen_cmd->add_option("--backend", gen_args.backend)->check(CLI::IsMember({"mock", "http"}));
  gen_cmd->add_option("--out", gen_args.out, "Accumulated dataset (JSONL)")->required();
  gen_cmd->add_option("--mock-mode", gen_args.mock_mode)->check(CLI::IsMember({"varied", "constant"}));
  gen_cmd->add_option("--max-cycles", gen_args.max_cycles);

  OutlierArgs out_args;
  auto* out_cmd = app.add_subcommand("outliers", "Export sorted nearest-neighbor distance curves");
  out_cmd->add_option("--in", out_args.in)->required();
  out_cmd->add_option("--out", out_args.out)->required();
  out_cmd->add_option("--thetas", out_args.thetas, "Global thresholds")->delimiter(',');
  out_cmd->add_option("--theta-l", out_args.theta_l);
  out_cmd->add_option("--stopwords", out_args.stopwords);
  out_cmd->add_option("--seed", out_args.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitSchema;
  }

  try {
    if (*audit_cmd) return run_audit(audit_args);
    if (*compare_cmd) return run_compare(compare_args);
    if (*gen_cmd) return run_generate(gen_args);
    if (*out_cmd) return run_outliers(out_args);
  } catch (const BackendError& e) {
    std::cerr << "backend error: " << e.what() << "\n";
    return kExitBackend;
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}
