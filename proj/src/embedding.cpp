#include "corpus_audit/embedding.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "corpus_audit/corpus_io.hpp"
#include "corpus_audit/errors.hpp"

namespace corpus_audit {

void EmbeddingConfig::validate() const {
  if (window < 1) throw ConfigError("embedding window must be >= 1");
  if (dimension < 1) throw ConfigError("embedding dimension must be >= 1");
  if (epochs < 1) throw ConfigError("embedding epochs must be >= 1");
  if (negative_samples < 0) throw ConfigError("negative sample count must be >= 0");
  if (min_count < 1) throw ConfigError("min_count must be >= 1");
  if (!(initial_learning_rate > 0.0)) throw ConfigError("learning rate must be positive");
}

EmbeddingModel::EmbeddingModel(std::vector<std::string> words, std::vector<float> matrix,
                               std::size_t dimension)
    : words_(std::move(words)), matrix_(std::move(matrix)), dimension_(dimension) {
  if (matrix_.size() != words_.size() * dimension_) {
    throw PreconditionError("embedding matrix size does not match vocabulary x dimension");
  }
  index_.reserve(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (!index_.emplace(words_[i], i).second) throw PreconditionError("duplicate vocabulary word " + words_[i]);
  }
}

std::optional<std::size_t> EmbeddingModel::index_of(std::string_view word) const {
  auto it = index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::span<const float> EmbeddingModel::row(std::size_t index) const {
  return {matrix_.data() + index * dimension_, dimension_};
}

namespace {

// Linear congruential generator used by the reference word2vec trainer.
class Lcg {
 public:
  explicit Lcg(std::uint64_t seed) {
    // splitmix64 so small seeds still give well-mixed starting states
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    state_ = z ^ (z >> 31);
  }
  std::uint64_t next() {
    state_ = state_ * 25214903917ULL + 11ULL;
    return state_;
  }

 private:
  std::uint64_t state_;
};

struct Vocabulary {
  std::vector<std::string> words;
  std::vector<std::uint64_t> counts;
  std::unordered_map<std::string, std::uint32_t> index;
};

Vocabulary build_vocabulary(std::span<const std::vector<std::string>> corpus, int min_count) {
  std::unordered_map<std::string, std::uint64_t> freq;
  for (const auto& review : corpus) {
    for (const auto& tok : review) ++freq[tok];
  }
  std::vector<std::pair<std::string, std::uint64_t>> entries;
  entries.reserve(freq.size());
  for (auto& [w, c] : freq) {
    if (c >= static_cast<std::uint64_t>(min_count)) entries.emplace_back(w, c);
  }
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  Vocabulary vocab;
  vocab.words.reserve(entries.size());
  for (auto& [w, c] : entries) {
    vocab.index.emplace(w, static_cast<std::uint32_t>(vocab.words.size()));
    vocab.words.push_back(w);
    vocab.counts.push_back(c);
  }
  return vocab;
}

std::vector<std::uint32_t> unigram_table(const std::vector<std::uint64_t>& counts) {
  const std::size_t size = std::clamp<std::size_t>(counts.size() * 1000, 100'000, 10'000'000);
  double total = 0.0;
  for (auto c : counts) total += std::pow(static_cast<double>(c), 0.75);
  std::vector<std::uint32_t> table(size);
  std::size_t word = 0;
  double cumulative = std::pow(static_cast<double>(counts[0]), 0.75) / total;
  for (std::size_t a = 0; a < size; ++a) {
    table[a] = static_cast<std::uint32_t>(word);
    if (static_cast<double>(a) / static_cast<double>(size) > cumulative && word + 1 < counts.size()) {
      ++word;
      cumulative += std::pow(static_cast<double>(counts[word]), 0.75) / total;
    }
  }
  return table;
}

}  // namespace

EmbeddingModel train_word_embeddings(std::span<const std::vector<std::string>> corpus_tokens,
                                     const EmbeddingConfig& config) {
  config.validate();
  Vocabulary vocab = build_vocabulary(corpus_tokens, config.min_count);
  if (vocab.words.empty()) throw TrainingError("empty vocabulary: no token reaches min_count");

  const auto dim = static_cast<std::size_t>(config.dimension);
  const std::size_t vocab_size = vocab.words.size();

  std::vector<std::vector<std::uint32_t>> sequences;
  sequences.reserve(corpus_tokens.size());
  std::uint64_t train_words = 0;
  for (const auto& review : corpus_tokens) {
    std::vector<std::uint32_t> seq;
    seq.reserve(review.size());
    for (const auto& tok : review) {
      auto it = vocab.index.find(tok);
      if (it != vocab.index.end()) seq.push_back(it->second);
    }
    train_words += seq.size();
    if (!seq.empty()) sequences.push_back(std::move(seq));
  }

  Lcg rng(config.rng_seed);
  std::vector<float> syn0(vocab_size * dim);
  for (auto& w : syn0) {
    w = (static_cast<float>(rng.next() & 0xFFFF) / 65536.0f - 0.5f) / static_cast<float>(dim);
  }
  std::vector<float> syn1neg(vocab_size * dim, 0.0f);
  const auto table = unigram_table(vocab.counts);
  std::vector<float> neu1e(dim);

  const auto window = static_cast<std::uint64_t>(config.window);
  const double total = static_cast<double>(train_words) * config.epochs + 1.0;
  const auto starting_alpha = static_cast<float>(config.initial_learning_rate);
  float alpha = starting_alpha;
  std::uint64_t processed = 0;

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    for (const auto& seq : sequences) {
      const std::size_t len = seq.size();
      for (std::size_t pos = 0; pos < len; ++pos) {
        if (processed % 10000 == 0) {
          alpha = starting_alpha *
                  std::max(1.0f - static_cast<float>(static_cast<double>(processed) / total), 1e-4f);
        }
        ++processed;
        const std::uint32_t word = seq[pos];
        const auto reduced = static_cast<std::size_t>(rng.next() % window);
        const std::size_t span = static_cast<std::size_t>(window) - reduced;
        const std::size_t lo = pos >= span ? pos - span : 0;
        const std::size_t hi = std::min(len - 1, pos + span);
        for (std::size_t c = lo; c <= hi; ++c) {
          if (c == pos) continue;
          float* in = syn0.data() + static_cast<std::size_t>(seq[c]) * dim;
          std::fill(neu1e.begin(), neu1e.end(), 0.0f);
          for (int d = 0; d <= config.negative_samples; ++d) {
            std::uint32_t target;
            float label;
            if (d == 0) {
              target = word;
              label = 1.0f;
            } else {
              target = table[(rng.next() >> 16) % table.size()];
              if (target == word) continue;
              label = 0.0f;
            }
            float* out = syn1neg.data() + static_cast<std::size_t>(target) * dim;
            float f = 0.0f;
            for (std::size_t k = 0; k < dim; ++k) f += in[k] * out[k];
            const float g = (label - 1.0f / (1.0f + std::exp(-f))) * alpha;
            for (std::size_t k = 0; k < dim; ++k) neu1e[k] += g * out[k];
            for (std::size_t k = 0; k < dim; ++k) out[k] += g * in[k];
          }
          for (std::size_t k = 0; k < dim; ++k) in[k] += neu1e[k];
        }
      }
    }
  }
  return EmbeddingModel(std::move(vocab.words), std::move(syn0), dim);
}

std::optional<Vector> embed_review(const EmbeddingModel& model, std::span<const std::string> tokens) {
  std::vector<std::size_t> rows;
  rows.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (auto idx = model.index_of(t)) rows.push_back(*idx);
  }
  if (rows.empty()) return std::nullopt;
  // canonical summation order: equal token multisets give bitwise-equal vectors
  std::sort(rows.begin(), rows.end());
  Vector mean(model.dimension(), 0.0);
  for (auto r : rows) {
    const auto v = model.row(r);
    for (std::size_t k = 0; k < mean.size(); ++k) mean[k] += static_cast<double>(v[k]);
  }
  const double count = static_cast<double>(rows.size());
  for (auto& x : mean) x /= count;
  return mean;
}

Vector embed_user(std::span<const Vector> review_vectors) {
  if (review_vectors.empty()) throw PreconditionError("embed_user needs at least one review vector");
  const std::size_t dim = review_vectors.front().size();
  std::vector<const Vector*> order;
  order.reserve(review_vectors.size());
  for (const auto& v : review_vectors) {
    if (v.size() != dim) throw PreconditionError("review vectors differ in dimension");
    order.push_back(&v);
  }
  std::sort(order.begin(), order.end(), [](const Vector* a, const Vector* b) { return *a < *b; });
  Vector mean(dim, 0.0);
  for (const auto* v : order) {
    for (std::size_t k = 0; k < dim; ++k) mean[k] += (*v)[k];
  }
  const double count = static_cast<double>(order.size());
  for (auto& x : mean) x /= count;
  return mean;
}

std::string format_model(const EmbeddingModel& model) {
  std::string out = std::to_string(model.vocabulary_size()) + " " + std::to_string(model.dimension()) + "\n";
  char buf[64];
  for (std::size_t i = 0; i < model.vocabulary_size(); ++i) {
    out += model.words()[i];
    for (float v : model.row(i)) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
      out.push_back(' ');
      out.append(buf, ptr);
    }
    out.push_back('\n');
  }
  return out;
}

EmbeddingModel parse_model(std::string_view text) {
  auto next_line = [&text]() -> std::string_view {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
  };
  auto parse_size = [](std::string_view s, std::size_t& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
  };

  const std::string_view header = next_line();
  const std::size_t sp = header.find(' ');
  std::size_t vocab_size = 0, dim = 0;
  if (sp == std::string_view::npos || !parse_size(header.substr(0, sp), vocab_size) ||
      !parse_size(header.substr(sp + 1), dim) || dim == 0) {
    throw SchemaError("embedding model: malformed header");
  }
  std::vector<std::string> words;
  std::vector<float> matrix;
  words.reserve(vocab_size);
  matrix.reserve(vocab_size * dim);
  for (std::size_t i = 0; i < vocab_size; ++i) {
    std::string_view line = next_line();
    const std::size_t ws = line.find(' ');
    if (line.empty() || ws == std::string_view::npos) {
      throw RecordError(i + 2, "embedding model: expected word and components");
    }
    words.emplace_back(line.substr(0, ws));
    std::string_view rest = line.substr(ws + 1);
    for (std::size_t k = 0; k < dim; ++k) {
      const std::size_t end = std::min(rest.find(' '), rest.size());
      float v = 0.0f;
      auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + end, v);
      if (ec != std::errc{} || ptr != rest.data() + end) {
        throw RecordError(i + 2, "embedding model: bad component");
      }
      matrix.push_back(v);
      rest = end < rest.size() ? rest.substr(end + 1) : std::string_view{};
    }
    if (!rest.empty()) throw RecordError(i + 2, "embedding model: too many components");
  }
  return EmbeddingModel(std::move(words), std::move(matrix), dim);
}

void save_model(const EmbeddingModel& model, const std::filesystem::path& path) {
  write_file(path, format_model(model));
}

EmbeddingModel load_model(const std::filesystem::path& path) { return parse_model(read_file(path)); }

}  // namespace corpus_audit
