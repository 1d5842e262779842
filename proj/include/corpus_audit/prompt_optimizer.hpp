#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "corpus_audit/corpus_io.hpp"
#include "corpus_audit/embedding.hpp"
#include "corpus_audit/sentiment_metrics.hpp"

namespace corpus_audit {

// The six evaluated dimensions, in evaluation and rendering order.
enum class Dimension { lexical, semantic, sentiment, outlier, uniqueness, length };
inline constexpr std::size_t kDimensionCount = 6;

// Prompt sections: one per dimension plus the format-repair section used after a parse failure.
enum class SectionKind { lexical, semantic, sentiment, outlier, uniqueness, length, format };
inline constexpr std::size_t kSectionCount = 7;
inline constexpr std::size_t kMaxActiveInstructions = 3;

std::string to_string(Dimension d);
std::string to_string(SectionKind s);
std::string section_title(SectionKind s);
SectionKind section_of(Dimension d);

struct Instruction {
  std::string text;
  std::uint64_t sequence = 0;

  friend bool operator==(const Instruction&, const Instruction&) = default;
};

struct InstructionPools {
  std::array<std::vector<std::string>, kSectionCount> pools;

  const std::vector<std::string>& operator[](SectionKind s) const { return pools[static_cast<std::size_t>(s)]; }
  std::vector<std::string>& operator[](SectionKind s) { return pools[static_cast<std::size_t>(s)]; }
};

// Bundled pools, or <dir>/<section>.txt (one instruction per line) when a directory is given.
InstructionPools default_pools();
InstructionPools load_pools(const std::filesystem::path& dir);

struct PromptState {
  std::string base_prompt;
  std::size_t num_reviews = 20;
  std::string examples;  // CSV rows substituted for the example marker; kept verbatim when empty
  std::array<std::vector<Instruction>, kSectionCount> sections;
  std::array<std::size_t, kSectionCount> cursors{};
  std::uint64_t next_sequence = 0;
  int cycle = 0;

  const std::vector<Instruction>& section(SectionKind s) const { return sections[static_cast<std::size_t>(s)]; }

  friend bool operator==(const PromptState&, const PromptState&) = default;
};

std::string_view base_template(int level);  // 1 or 2
PromptState initial_prompt_state(int level, std::size_t num_reviews, std::string examples = {});

struct Verdict {
  bool pass = false;
  double score = 0.0;
  double threshold = 0.0;
  std::string detail;

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

struct MetricVerdicts {
  std::array<Verdict, kDimensionCount> verdicts;

  const Verdict& operator[](Dimension d) const { return verdicts[static_cast<std::size_t>(d)]; }
  Verdict& operator[](Dimension d) { return verdicts[static_cast<std::size_t>(d)]; }
  bool all_pass() const;

  friend bool operator==(const MetricVerdicts&, const MetricVerdicts&) = default;
};

enum class ThresholdMode { absolute, reference_corpus };

struct Thresholds {
  double lexical = 0.20;              // unigram L_r
  double semantic = 5e-4;             // average MST edge length
  double sentiment = 0.85;            // D_sen
  double outlier_max_fraction = 0.05; // share of reviews with Z <= outlier_z
  double outlier_z = -3.0;
};

// Length bins over content token counts: 1-10, 11-40, 41-80, more than 80.
inline constexpr std::size_t kLengthBins = 4;
struct LengthTargets {
  std::array<double, kLengthBins> fractions{0.25, 0.40, 0.25, 0.10};
  double tolerance = 0.10;

  void validate() const;
};
std::size_t length_bin(std::size_t tokens);

struct GenerationConfig {
  std::size_t batch_size = 20;
  int max_cycles = 5;
  int all_pass_streak = 2;
  int prompt_level = 1;
  std::uint64_t rng_seed = 1;
  ThresholdMode threshold_mode = ThresholdMode::absolute;
  std::optional<std::filesystem::path> reference_corpus;
  Thresholds thresholds;
  LengthTargets length_targets;
  std::optional<std::filesystem::path> pools_dir;
  std::optional<std::filesystem::path> examples_path;
  std::string endpoint_url;
  double endpoint_timeout_seconds = 120.0;
  EmbeddingConfig embedding;

  void validate() const;
};

// JSON config file; missing keys keep their defaults. The endpoint falls back to
// the CORPUS_AUDIT_LLM_URL environment variable.
GenerationConfig load_generation_config(const std::filesystem::path& path);
GenerationConfig parse_generation_config(std::string_view json_text, const std::filesystem::path& base_dir = {});

// Thresholds equal to the reference corpus's own lexical, semantic and sentiment scores.
Thresholds thresholds_from_reference(const Corpus& reference, const GenerationConfig& config,
                                     SentimentBackend& sentiment);

MetricVerdicts evaluate_batch(std::span<const Review> batch, std::span<const Review> history,
                              const GenerationConfig& config, const Thresholds& thresholds,
                              SentimentBackend& sentiment);

// Appends the next pool instruction to each failed section, evicting the oldest beyond three.
// Increments the cycle counter.
PromptState update_prompt(PromptState state, const MetricVerdicts& verdicts, const InstructionPools& pools);
// Adds the next format-repair instruction. Increments the cycle counter.
PromptState add_format_repair(PromptState state, const InstructionPools& pools);
// Low-level step shared by both: one instruction into one section.
void push_instruction(PromptState& state, SectionKind section, const InstructionPools& pools);

std::string render_prompt(const PromptState& state);

class CompletionClient {
 public:
  virtual ~CompletionClient() = default;
  virtual std::string name() const = 0;
  // Throws BackendError when the endpoint cannot be reached.
  virtual std::string complete(const std::string& prompt) = 0;
};

// Parses a completion as CSV ("rating,review,user-id" header) or as a JSON array of
// objects. Throws SchemaError when nothing parseable is found.
std::vector<Review> parse_completion(std::string_view text);

struct GeneratedReview {
  Review review;
  int cycle = 0;
};

struct CycleRecord {
  int cycle = 0;
  bool parsed = false;
  std::string parse_error;
  std::size_t batch_size = 0;
  std::optional<MetricVerdicts> verdicts;
};

struct AccumulatedDataset {
  std::vector<GeneratedReview> reviews;
  std::vector<CycleRecord> cycles;
  bool aborted = false;
  std::string abort_reason;

  std::vector<Review> plain_reviews() const;
};

struct LoopResult {
  AccumulatedDataset dataset;
  PromptState final_state;
  Thresholds thresholds;
};

using CycleObserver = std::function<void(const CycleRecord&, const PromptState&)>;

LoopResult run_loop(CompletionClient& client, const GenerationConfig& config, SentimentBackend& sentiment,
                    const CycleObserver& observer = {});
LoopResult run_loop(CompletionClient& client, const GenerationConfig& config, SentimentBackend& sentiment,
                    const Thresholds& thresholds, PromptState initial, const InstructionPools& pools,
                    const CycleObserver& observer = {});

// One JSON object per review: cycle, user_id, rating, review, and that cycle's verdicts.
std::string format_dataset_jsonl(const AccumulatedDataset& dataset);
void write_dataset_jsonl(const AccumulatedDataset& dataset, const std::filesystem::path& path);

}  // namespace corpus_audit
