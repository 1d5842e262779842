#include "corpus_audit/prompt_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <unordered_set>

#include <json.hpp>

#include "corpus_audit/errors.hpp"
#include "corpus_audit/lexical_metrics.hpp"
#include "corpus_audit/preprocess.hpp"
#include "corpus_audit/semantic_metrics.hpp"
#include "corpus_audit/stylistic_outliers.hpp"
#include "embedded_data.hpp"

namespace corpus_audit {

using json = nlohmann::ordered_json;

namespace {

constexpr std::string_view kExampleMarker = "<Place example reviews here>";
constexpr std::string_view kCountPlaceholder = "{num_reviews}";

constexpr std::array<std::string_view, kSectionCount> kSectionNames{
    "lexical", "semantic", "sentiment", "outlier", "uniqueness", "length", "format"};

constexpr std::array<std::string_view, kSectionCount> kSectionTitles{
    "LEXICAL DIVERSITY GUIDELINES",   "SEMANTIC DIVERSITY GUIDELINES", "SENTIMENT CONSISTENCY GUIDELINES",
    "STYLE CONSISTENCY GUIDELINES",   "UNIQUENESS GUIDELINES",         "LENGTH DIVERSITY GUIDELINES",
    "OUTPUT FORMAT GUIDELINES"};

std::size_t idx(SectionKind s) { return static_cast<std::size_t>(s); }

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

void replace_all(std::string& s, std::string_view from, std::string_view to) {
  for (std::size_t p = s.find(from); p != std::string::npos; p = s.find(from, p + to.size())) {
    s.replace(p, from.size(), to);
  }
}

Verdict undefined_verdict(double threshold, const std::string& why) { return {false, 0.0, threshold, why}; }

std::vector<std::vector<std::string>> content_tokens(std::span<const Review> reviews) {
  std::vector<std::vector<std::string>> out;
  out.reserve(reviews.size());
  for (const auto& r : reviews) out.push_back(tokenize(r.text).tokens_content);
  return out;
}

Verdict lexical_verdict(const std::vector<std::vector<std::string>>& tokens, double threshold) {
  try {
    const double lr = lexical_uniqueness_ratio(tokens, 1);
    return {lr >= threshold, lr, threshold, "unigram L_r"};
  } catch (const UndefinedMetricError& e) {
    return undefined_verdict(threshold, e.what());
  }
}

Verdict sentiment_verdict(std::span<const Review> batch, SentimentBackend& backend, double threshold) {
  std::vector<std::string> texts;
  std::vector<int> ratings;
  for (const auto& r : batch) {
    texts.push_back(r.text);
    ratings.push_back(r.rating);
  }
  try {
    const auto labels = backend.classify(texts);
    const auto profile = sentiment_profile(ratings, labels, true);
    return {profile.d_sen >= threshold, profile.d_sen, threshold, "D_sen over present rating segments"};
  } catch (const UndefinedMetricError& e) {
    return undefined_verdict(threshold, e.what());
  }
}

Verdict outlier_verdict(std::span<const std::optional<Vector>> vectors, const Thresholds& t) {
  std::vector<Vector> present;
  for (const auto& v : vectors) {
    if (v && std::any_of(v->begin(), v->end(), [](double x) { return x != 0.0; })) present.push_back(*v);
  }
  if (present.size() < 2) return {true, 0.0, t.outlier_max_fraction, "fewer than two embedded reviews"};
  const auto z = zscores(avg_pairwise_similarity(present));
  const auto flagged = std::count_if(z.begin(), z.end(), [&](double v) { return v <= t.outlier_z; });
  const double fraction = static_cast<double>(flagged) / static_cast<double>(present.size());
  return {fraction <= t.outlier_max_fraction, fraction, t.outlier_max_fraction,
          "share of reviews with similarity z-score <= " + json(t.outlier_z).dump()};
}

Verdict uniqueness_verdict(std::span<const Review> batch, std::span<const Review> history) {
  std::unordered_set<std::string> seen;
  for (const auto& r : history) seen.insert(normalize_for_dedup(r.text));
  std::size_t duplicates = 0;
  for (const auto& r : batch) {
    if (!seen.insert(normalize_for_dedup(r.text)).second) ++duplicates;
  }
  const double unique_share = 1.0 - static_cast<double>(duplicates) / static_cast<double>(batch.size());
  return {duplicates == 0, unique_share, 1.0, std::to_string(duplicates) + " duplicate review(s)"};
}

Verdict length_verdict(std::span<const Review> batch, const LengthTargets& targets) {
  std::array<std::size_t, kLengthBins> counts{};
  for (const auto& r : batch) ++counts[length_bin(tokenize(r.text).content_token_count)];
  double worst = 0.0;
  std::string detail = "bin fractions";
  for (std::size_t b = 0; b < kLengthBins; ++b) {
    const double f = static_cast<double>(counts[b]) / static_cast<double>(batch.size());
    worst = std::max(worst, std::abs(f - targets.fractions[b]));
    detail += (b == 0 ? " " : "/") + json(f).dump();
  }
  return {worst <= targets.tolerance + 1e-12, worst, targets.tolerance, detail};
}

std::vector<std::string> pool_from(std::string_view text) { return parse_word_list(text); }

}  // namespace

std::string to_string(Dimension d) { return std::string(kSectionNames[static_cast<std::size_t>(d)]); }
std::string to_string(SectionKind s) { return std::string(kSectionNames[idx(s)]); }
std::string section_title(SectionKind s) { return std::string(kSectionTitles[idx(s)]); }
SectionKind section_of(Dimension d) { return static_cast<SectionKind>(static_cast<std::size_t>(d)); }

InstructionPools default_pools() {
  InstructionPools p;
  p[SectionKind::lexical] = pool_from(data::pools_lexical());
  p[SectionKind::semantic] = pool_from(data::pools_semantic());
  p[SectionKind::sentiment] = pool_from(data::pools_sentiment());
  p[SectionKind::outlier] = pool_from(data::pools_outlier());
  p[SectionKind::uniqueness] = pool_from(data::pools_uniqueness());
  p[SectionKind::length] = pool_from(data::pools_length());
  p[SectionKind::format] = pool_from(data::pools_format());
  return p;
}

InstructionPools load_pools(const std::filesystem::path& dir) {
  InstructionPools p = default_pools();
  for (std::size_t s = 0; s < kSectionCount; ++s) {
    const auto file = dir / (std::string(kSectionNames[s]) + ".txt");
    if (std::filesystem::exists(file)) p.pools[s] = pool_from(read_file(file));
  }
  return p;
}

std::string_view base_template(int level) {
  if (level == 1) return data::prompts_level1();
  if (level == 2) return data::prompts_level2();
  throw ConfigError("prompt level must be 1 or 2");
}

PromptState initial_prompt_state(int level, std::size_t num_reviews, std::string examples) {
  PromptState s;
  s.base_prompt = trim(base_template(level));
  s.num_reviews = num_reviews;
  s.examples = std::move(examples);
  return s;
}

bool MetricVerdicts::all_pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

void LengthTargets::validate() const {
  double sum = 0.0;
  for (double f : fractions) {
    if (f < 0.0 || f > 1.0) throw ConfigError("length target fractions must lie in [0, 1]");
    sum += f;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ConfigError("length target fractions must sum to 1");
  if (tolerance < 0.0) throw ConfigError("length tolerance must be non-negative");
}

std::size_t length_bin(std::size_t tokens) {
  if (tokens <= 10) return 0;
  if (tokens <= 40) return 1;
  if (tokens <= 80) return 2;
  return 3;
}

void GenerationConfig::validate() const {
  if (batch_size == 0) throw ConfigError("batch_size must be positive");
  if (max_cycles < 0) throw ConfigError("max_cycles must be non-negative");
  if (all_pass_streak < 1) throw ConfigError("all_pass_streak must be at least 1");
  if (prompt_level != 1 && prompt_level != 2) throw ConfigError("prompt_level must be 1 or 2");
  if (threshold_mode == ThresholdMode::reference_corpus && !reference_corpus) {
    throw ConfigError("reference threshold mode needs reference_corpus");
  }
  length_targets.validate();
  embedding.validate();
}

GenerationConfig parse_generation_config(std::string_view json_text, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("generation config: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("generation config must be a JSON object");
  GenerationConfig c;
  const auto path_of = [&](const json& v) {
    std::filesystem::path p = v.get<std::string>();
    return p.is_relative() && !base_dir.empty() ? base_dir / p : p;
  };
  try {
    c.batch_size = j.value("batch_size", c.batch_size);
    c.max_cycles = j.value("max_cycles", c.max_cycles);
    c.all_pass_streak = j.value("all_pass_streak", c.all_pass_streak);
    c.prompt_level = j.value("prompt_level", c.prompt_level);
    c.rng_seed = j.value("seed", c.rng_seed);
    if (j.contains("pools_dir")) c.pools_dir = path_of(j["pools_dir"]);
    if (j.contains("examples")) c.examples_path = path_of(j["examples"]);
    if (j.contains("thresholds")) {
      const auto& t = j["thresholds"];
      const std::string mode = t.value("mode", std::string("absolute"));
      if (mode == "absolute") {
        c.threshold_mode = ThresholdMode::absolute;
      } else if (mode == "reference") {
        c.threshold_mode = ThresholdMode::reference_corpus;
      } else {
        throw ConfigError("thresholds.mode must be 'absolute' or 'reference'");
      }
      if (t.contains("reference_corpus")) c.reference_corpus = path_of(t["reference_corpus"]);
      c.thresholds.lexical = t.value("lexical", c.thresholds.lexical);
      c.thresholds.semantic = t.value("semantic", c.thresholds.semantic);
      c.thresholds.sentiment = t.value("sentiment", c.thresholds.sentiment);
      c.thresholds.outlier_max_fraction = t.value("outlier_max_fraction", c.thresholds.outlier_max_fraction);
      c.thresholds.outlier_z = t.value("outlier_z", c.thresholds.outlier_z);
    }
    if (j.contains("length_targets")) {
      const auto& l = j["length_targets"];
      if (l.contains("fractions")) {
        const auto f = l["fractions"].get<std::vector<double>>();
        if (f.size() != kLengthBins) throw ConfigError("length_targets.fractions needs four entries");
        std::copy(f.begin(), f.end(), c.length_targets.fractions.begin());
      }
      c.length_targets.tolerance = l.value("tolerance", c.length_targets.tolerance);
    }
    if (j.contains("endpoint")) {
      const auto& e = j["endpoint"];
      c.endpoint_url = e.value("url", c.endpoint_url);
      c.endpoint_timeout_seconds = e.value("timeout_s", c.endpoint_timeout_seconds);
    }
    if (j.contains("embedding")) {
      const auto& e = j["embedding"];
      c.embedding.window = e.value("window", c.embedding.window);
      c.embedding.dimension = e.value("dimension", c.embedding.dimension);
      c.embedding.epochs = e.value("epochs", c.embedding.epochs);
      c.embedding.negative_samples = e.value("negative_samples", c.embedding.negative_samples);
      c.embedding.min_count = e.value("min_count", c.embedding.min_count);
      c.embedding.initial_learning_rate = e.value("learning_rate", c.embedding.initial_learning_rate);
    }
    c.embedding.rng_seed = c.rng_seed;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("generation config: ") + e.what());
  }
  if (c.endpoint_url.empty()) {
    if (const char* env = std::getenv("CORPUS_AUDIT_LLM_URL")) c.endpoint_url = env;
  }
  c.validate();
  return c;
}

GenerationConfig load_generation_config(const std::filesystem::path& path) {
  return parse_generation_config(read_file(path), path.parent_path());
}

Thresholds thresholds_from_reference(const Corpus& reference, const GenerationConfig& config,
                                     SentimentBackend& sentiment) {
  Thresholds t = config.thresholds;
  const auto tokens = content_tokens(reference.reviews);
  t.lexical = lexical_uniqueness_ratio(tokens, 1);
  const auto model = train_word_embeddings(tokens, config.embedding);
  std::vector<std::optional<Vector>> vectors;
  for (const auto& tk : tokens) vectors.push_back(embed_review(model, tk));
  t.semantic = semantic_metrics(vectors).avg_mst_edge_length;
  std::vector<std::string> texts;
  std::vector<int> ratings;
  for (const auto& r : reference.reviews) {
    texts.push_back(r.text);
    ratings.push_back(r.rating);
  }
  t.sentiment = sentiment_profile(ratings, sentiment.classify(texts), true).d_sen;
  return t;
}

MetricVerdicts evaluate_batch(std::span<const Review> batch, std::span<const Review> history,
                              const GenerationConfig& config, const Thresholds& thresholds,
                              SentimentBackend& sentiment) {
  if (batch.empty()) throw PreconditionError("cannot evaluate an empty batch");
  MetricVerdicts v;
  const auto batch_tokens = content_tokens(batch);
  v[Dimension::lexical] = lexical_verdict(batch_tokens, thresholds.lexical);

  std::vector<std::vector<std::string>> training = content_tokens(history);
  training.insert(training.end(), batch_tokens.begin(), batch_tokens.end());
  std::vector<std::optional<Vector>> vectors;
  try {
    const auto model = train_word_embeddings(training, config.embedding);
    for (const auto& tk : batch_tokens) vectors.push_back(embed_review(model, tk));
  } catch (const TrainingError&) {
    vectors.assign(batch.size(), std::nullopt);
  }

  try {
    SemanticOptions opts;
    opts.mst = MstChoice::exact;
    const auto sem = semantic_metrics(vectors, opts);
    const double score = sem.degenerate ? 0.0 : sem.avg_mst_edge_length;
    v[Dimension::semantic] = {score >= thresholds.semantic && !sem.degenerate, score, thresholds.semantic,
                              sem.degenerate ? "no nonzero MST edge" : "average MST edge length"};
  } catch (const UndefinedMetricError& e) {
    v[Dimension::semantic] = undefined_verdict(thresholds.semantic, e.what());
  }

  v[Dimension::sentiment] = sentiment_verdict(batch, sentiment, thresholds.sentiment);
  v[Dimension::outlier] = outlier_verdict(vectors, thresholds);
  v[Dimension::uniqueness] = uniqueness_verdict(batch, history);
  v[Dimension::length] = length_verdict(batch, config.length_targets);
  return v;
}

void push_instruction(PromptState& state, SectionKind section, const InstructionPools& pools) {
  const auto& pool = pools[section];
  if (pool.empty()) throw ConfigError("instruction pool for '" + to_string(section) + "' is empty");
  auto& cursor = state.cursors[idx(section)];
  auto& active = state.sections[idx(section)];
  active.push_back({pool[cursor % pool.size()], state.next_sequence++});
  cursor = (cursor + 1) % pool.size();
  while (active.size() > kMaxActiveInstructions) {
    const auto oldest = std::min_element(active.begin(), active.end(), [](const Instruction& a, const Instruction& b) {
      return a.sequence < b.sequence;
    });
    active.erase(oldest);
  }
}

PromptState update_prompt(PromptState state, const MetricVerdicts& verdicts, const InstructionPools& pools) {
  for (std::size_t d = 0; d < kDimensionCount; ++d) {
    if (!verdicts.verdicts[d].pass) push_instruction(state, section_of(static_cast<Dimension>(d)), pools);
  }
  ++state.cycle;
  return state;
}

PromptState add_format_repair(PromptState state, const InstructionPools& pools) {
  push_instruction(state, SectionKind::format, pools);
  ++state.cycle;
  return state;
}

std::string render_prompt(const PromptState& state) {
  std::string out = state.base_prompt;
  replace_all(out, kCountPlaceholder, std::to_string(state.num_reviews));
  if (!state.examples.empty()) replace_all(out, kExampleMarker, trim(state.examples));
  for (std::size_t s = 0; s < kSectionCount; ++s) {
    const auto& active = state.sections[s];
    if (active.empty()) continue;
    out += "\n\n";
    out += kSectionTitles[s];
    for (const auto& ins : active) {
      out += "\n- ";
      out += ins.text;
    }
  }
  return out;
}

namespace {

std::string lower_ascii(std::string s) {
  for (char& c : s) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return s;
}

std::optional<std::size_t> column(const std::vector<std::string>& header, std::initializer_list<std::string_view> names) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    const std::string h = lower_ascii(trim(header[i]));
    for (auto n : names) {
      if (h == n) return i;
    }
  }
  return std::nullopt;
}

std::string json_string_field(const json& obj, std::initializer_list<const char*> keys) {
  for (const char* k : keys) {
    if (obj.contains(k)) {
      const auto& v = obj[k];
      return v.is_string() ? v.get<std::string>() : v.dump();
    }
  }
  return {};
}

std::vector<Review> parse_json_completion(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("completion is not valid JSON: ") + e.what());
  }
  if (j.is_object() && j.contains("reviews")) j = j["reviews"];
  if (!j.is_array()) throw SchemaError("JSON completion must be an array of reviews");
  std::vector<Review> out;
  for (const auto& item : j) {
    if (!item.is_object()) continue;
    Review r;
    const auto rating = json_string_field(item, {"rating"});
    const auto parsed = parse_rating(rating);
    r.text = json_string_field(item, {"review", "text"});
    r.user_id = json_string_field(item, {"user-id", "user_id", "userid"});
    if (!parsed || r.user_id.empty()) continue;
    r.rating = *parsed;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Review> parse_csv_completion(std::string_view text) {
  std::size_t header_at = std::string_view::npos;
  for (std::size_t pos = 0; pos < text.size();) {
    const auto eol = std::min(text.find('\n', pos), text.size());
    const std::string line = lower_ascii(std::string(text.substr(pos, eol - pos)));
    if (line.find("rating") != std::string::npos && line.find("review") != std::string::npos &&
        line.find(',') != std::string::npos) {
      header_at = pos;
      break;
    }
    pos = eol + 1;
  }
  if (header_at == std::string_view::npos) throw SchemaError("no 'rating,review,user-id' header in completion");
  std::string_view body = text.substr(header_at);
  if (const auto fence = body.find("```"); fence != std::string_view::npos) body = body.substr(0, fence);
  const auto records = csv::parse(body);
  if (records.empty()) throw SchemaError("empty CSV block in completion");
  const auto& header = records.front().fields;
  const auto rating_col = column(header, {"rating"});
  const auto review_col = column(header, {"review", "text"});
  const auto user_col = column(header, {"user-id", "user_id", "userid", "user"});
  if (!rating_col || !review_col || !user_col) throw SchemaError("completion CSV header lacks rating, review or user-id");
  std::vector<Review> out;
  for (std::size_t r = 1; r < records.size(); ++r) {
    auto fields = records[r].fields;
    // Unquoted commas inside the review text: fold the surplus fields back into it.
    if (fields.size() > header.size() && *review_col > *rating_col && *review_col < *user_col) {
      const std::size_t surplus = fields.size() - header.size();
      for (std::size_t k = 0; k < surplus; ++k) {
        fields[*review_col] += "," + fields[*review_col + 1];
        fields.erase(fields.begin() + static_cast<std::ptrdiff_t>(*review_col) + 1);
      }
    }
    if (fields.size() != header.size()) continue;
    const auto rating = parse_rating(fields[*rating_col]);
    std::string user = trim(fields[*user_col]);
    if (!rating || user.empty()) continue;
    out.push_back({std::move(user), *rating, trim(fields[*review_col])});
  }
  return out;
}

}  // namespace

std::vector<Review> parse_completion(std::string_view text) {
  std::string body = trim(text);
  if (body.rfind("```", 0) == 0) {
    const auto nl = body.find('\n');
    body = nl == std::string::npos ? std::string() : body.substr(nl + 1);
  }
  const std::string start = trim(body);
  std::vector<Review> out;
  if (!start.empty() && (start.front() == '[' || start.front() == '{')) {
    auto end = start.rfind("```");
    out = parse_json_completion(end == std::string::npos ? start : trim(std::string_view(start).substr(0, end)));
  } else {
    out = parse_csv_completion(body);
  }
  if (out.empty()) throw SchemaError("completion contained no valid review rows");
  return out;
}

std::vector<Review> AccumulatedDataset::plain_reviews() const {
  std::vector<Review> out;
  out.reserve(reviews.size());
  for (const auto& g : reviews) out.push_back(g.review);
  return out;
}

LoopResult run_loop(CompletionClient& client, const GenerationConfig& config, SentimentBackend& sentiment,
                    const CycleObserver& observer) {
  config.validate();
  const InstructionPools pools = config.pools_dir ? load_pools(*config.pools_dir) : default_pools();
  std::string examples = config.examples_path ? read_file(*config.examples_path) : std::string();
  if (!examples.empty()) {
    // Drop a header line that duplicates the template's own.
    const auto first_nl = examples.find('\n');
    if (lower_ascii(trim(examples.substr(0, first_nl))).rfind("rating,review", 0) == 0) {
      examples = first_nl == std::string::npos ? std::string() : examples.substr(first_nl + 1);
    }
  }
  Thresholds thresholds = config.thresholds;
  if (config.threshold_mode == ThresholdMode::reference_corpus) {
    thresholds = thresholds_from_reference(load_corpus(*config.reference_corpus), config, sentiment);
  }
  return run_loop(client, config, sentiment, thresholds,
                  initial_prompt_state(config.prompt_level, config.batch_size, std::move(examples)), pools, observer);
}

LoopResult run_loop(CompletionClient& client, const GenerationConfig& config, SentimentBackend& sentiment,
                    const Thresholds& thresholds, PromptState initial, const InstructionPools& pools,
                    const CycleObserver& observer) {
  LoopResult result;
  result.thresholds = thresholds;
  PromptState state = std::move(initial);
  std::vector<Review> history;
  int streak = 0;
  for (int cycle = 1; cycle <= config.max_cycles; ++cycle) {
    CycleRecord record;
    record.cycle = cycle;
    std::string completion;
    try {
      completion = client.complete(render_prompt(state));
    } catch (const BackendError& e) {
      result.dataset.aborted = true;
      result.dataset.abort_reason = e.what();
      break;
    }
    std::vector<Review> batch;
    try {
      batch = parse_completion(completion);
      record.parsed = true;
    } catch (const SchemaError& e) {
      record.parse_error = e.what();
    }
    if (!record.parsed) {
      streak = 0;
      state = add_format_repair(std::move(state), pools);
      result.dataset.cycles.push_back(record);
      if (observer) observer(record, state);
      continue;
    }
    record.batch_size = batch.size();
    record.verdicts = evaluate_batch(batch, history, config, thresholds, sentiment);
    for (const auto& r : batch) {
      result.dataset.reviews.push_back({r, cycle});
      history.push_back(r);
    }
    state = update_prompt(std::move(state), *record.verdicts, pools);
    result.dataset.cycles.push_back(record);
    if (observer) observer(record, state);
    streak = record.verdicts->all_pass() ? streak + 1 : 0;
    if (streak >= config.all_pass_streak) break;
  }
  result.final_state = std::move(state);
  return result;
}

std::string format_dataset_jsonl(const AccumulatedDataset& dataset) {
  std::vector<const CycleRecord*> by_cycle;
  for (const auto& c : dataset.cycles) {
    if (static_cast<std::size_t>(c.cycle) >= by_cycle.size()) by_cycle.resize(static_cast<std::size_t>(c.cycle) + 1);
    by_cycle[static_cast<std::size_t>(c.cycle)] = &c;
  }
  std::string out;
  for (const auto& g : dataset.reviews) {
    json line;
    line["cycle"] = g.cycle;
    line["user_id"] = g.review.user_id;
    line["rating"] = g.review.rating;
    line["review"] = g.review.text;
    json verdicts = json::object();
    const CycleRecord* rec =
        static_cast<std::size_t>(g.cycle) < by_cycle.size() ? by_cycle[static_cast<std::size_t>(g.cycle)] : nullptr;
    if (rec && rec->verdicts) {
      for (std::size_t d = 0; d < kDimensionCount; ++d) {
        const auto& v = rec->verdicts->verdicts[d];
        verdicts[to_string(static_cast<Dimension>(d))] = {{"pass", v.pass}, {"score", v.score}};
      }
    }
    line["verdicts"] = std::move(verdicts);
    out += line.dump();
    out += '\n';
  }
  return out;
}

void write_dataset_jsonl(const AccumulatedDataset& dataset, const std::filesystem::path& path) {
  write_file(path, format_dataset_jsonl(dataset));
}

}  // namespace corpus_audit
