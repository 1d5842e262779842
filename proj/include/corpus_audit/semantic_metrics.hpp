#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "corpus_audit/kernels/graph.hpp"
#include "corpus_audit/vector.hpp"

namespace corpus_audit {

inline constexpr std::size_t kExactMstCap = 20'000;
inline constexpr std::size_t kDefaultKnnK = 30;

enum class MstMode { exact, approximate_knn };
enum class MstChoice { automatic, exact, knn };

std::string to_string(MstMode mode);
MstMode parse_mst_mode(const std::string& text);

// 1 - cos(a, b); throws DegenerateVectorError on a zero-norm input.
double cosine_distance(std::span<const double> a, std::span<const double> b);

// Class id per vector; vectors equal after rounding every component to 9 decimals share an id.
// Ids are assigned in order of first appearance.
std::vector<std::size_t> distinct_classes(std::span<const Vector> vectors);

double semantic_ratio(std::span<const Vector> vectors);

std::vector<Edge> exact_mst(std::span<const Vector> vectors, std::size_t cap = kExactMstCap);

struct SpanningForest {
  std::vector<Edge> edges;
  std::size_t components = 1;
};

// Minimum spanning forest of the symmetric k-NN graph (Kruskal).
SpanningForest approx_mst(std::span<const Vector> vectors, std::size_t k = kDefaultKnnK);

struct EdgeLengthSummary {
  double mean = 0.0;
  bool degenerate = false;  // no nonzero edge between distinct embeddings
  std::size_t counted_edges = 0;
};

// Mean over distinct nonzero edges. An edge counts once per unordered pair of distinct
// embedding classes; zero-weight edges and edges inside one class are dropped.
EdgeLengthSummary avg_mst_edge_length(std::span<const Edge> edges, std::span<const std::size_t> classes);
// Every endpoint treated as its own class.
EdgeLengthSummary avg_mst_edge_length(std::span<const Edge> edges);

struct SemanticOptions {
  MstChoice mst = MstChoice::automatic;
  std::size_t knn_k = kDefaultKnnK;
  std::size_t exact_cap = kExactMstCap;
};

struct SemanticReport {
  double semantic_ratio = 0.0;
  double avg_mst_edge_length = 0.0;
  bool degenerate = false;
  MstMode mst_mode = MstMode::exact;
  std::size_t k = 0;  // 0 in exact mode
  std::size_t vectors = 0;
  std::size_t distinct_vectors = 0;
  std::size_t excluded_reviews = 0;
  std::size_t components = 1;

  friend bool operator==(const SemanticReport&, const SemanticReport&) = default;
};

// nullopt and zero-norm entries are excluded and counted. Throws UndefinedMetricError
// when nothing remains.
SemanticReport semantic_metrics(std::span<const std::optional<Vector>> review_vectors,
                                const SemanticOptions& options = {});

}  // namespace corpus_audit
