#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "corpus_audit/vector.hpp"

namespace corpus_audit {

struct EmbeddingConfig {
  int window = 5;
  int dimension = 100;
  int epochs = 5;
  int negative_samples = 5;
  int min_count = 1;
  double initial_learning_rate = 0.025;  // decays linearly to 1e-4 of itself
  std::uint64_t rng_seed = 1;

  void validate() const;
};

// Corpus-local word vectors. Rows are the skip-gram input vectors.
class EmbeddingModel {
 public:
  EmbeddingModel() = default;
  EmbeddingModel(std::vector<std::string> words, std::vector<float> matrix, std::size_t dimension);

  std::size_t vocabulary_size() const { return words_.size(); }
  std::size_t dimension() const { return dimension_; }
  const std::vector<std::string>& words() const { return words_; }
  std::optional<std::size_t> index_of(std::string_view word) const;
  std::span<const float> row(std::size_t index) const;
  const std::vector<float>& matrix() const { return matrix_; }

  friend bool operator==(const EmbeddingModel& a, const EmbeddingModel& b) {
    return a.dimension_ == b.dimension_ && a.words_ == b.words_ && a.matrix_ == b.matrix_;
  }

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<float> matrix_;
  std::size_t dimension_ = 0;
};

// Skip-gram with negative sampling over each review's own tokens; context windows
// never cross review boundaries. Deterministic for a given config.rng_seed.
EmbeddingModel train_word_embeddings(std::span<const std::vector<std::string>> corpus_tokens,
                                     const EmbeddingConfig& config);

// Mean of in-vocabulary token vectors; nullopt when no token is known.
std::optional<Vector> embed_review(const EmbeddingModel& model, std::span<const std::string> tokens);

Vector embed_user(std::span<const Vector> review_vectors);

// Text format: "<vocab> <dim>" header, then one "<word> <v1> ... <vd>" line per row.
void save_model(const EmbeddingModel& model, const std::filesystem::path& path);
EmbeddingModel load_model(const std::filesystem::path& path);
std::string format_model(const EmbeddingModel& model);
EmbeddingModel parse_model(std::string_view text);

}  // namespace corpus_audit
