#include "corpus_audit/semantic_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <tuple>

#include "corpus_audit/errors.hpp"
#include "corpus_audit/kernels/vector_ops.hpp"

namespace corpus_audit {

std::string to_string(MstMode mode) { return mode == MstMode::exact ? "exact" : "knn"; }

MstMode parse_mst_mode(const std::string& text) {
  if (text == "exact") return MstMode::exact;
  if (text == "knn" || text == "approximate_knn") return MstMode::approximate_knn;
  throw ConfigError("unknown MST mode '" + text + "'");
}

double cosine_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw PreconditionError("cosine distance: dimension mismatch");
  const double na = kernels::norm(a);
  const double nb = kernels::norm(b);
  if (na == 0.0 || nb == 0.0) throw DegenerateVectorError("cosine distance of a zero vector");
  std::vector<double> ua(a.size()), ub(b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    ua[i] = a[i] / na;
    ub[i] = b[i] / nb;
  }
  return kernels::unit_distance(ua, ub);
}

std::vector<std::size_t> distinct_classes(std::span<const Vector> vectors) {
  std::map<std::vector<long long>, std::size_t> seen;
  std::vector<std::size_t> classes;
  classes.reserve(vectors.size());
  std::vector<long long> key;
  for (const auto& v : vectors) {
    key.resize(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) key[i] = std::llround(v[i] * 1e9);
    auto [it, inserted] = seen.try_emplace(key, seen.size());
    classes.push_back(it->second);
  }
  return classes;
}

double semantic_ratio(std::span<const Vector> vectors) {
  if (vectors.empty()) throw PreconditionError("semantic ratio of an empty vector list");
  const auto classes = distinct_classes(vectors);
  const std::size_t distinct = *std::max_element(classes.begin(), classes.end()) + 1;
  return static_cast<double>(distinct) / static_cast<double>(vectors.size());
}

namespace {

DenseRows unit_rows_checked(std::span<const Vector> vectors) {
  for (const auto& v : vectors) {
    if (kernels::norm(v) == 0.0) throw DegenerateVectorError("zero vector passed to MST");
  }
  return kernels::normalize_rows(vectors);
}

}  // namespace

std::vector<Edge> exact_mst(std::span<const Vector> vectors, std::size_t cap) {
  if (vectors.size() < 2) throw PreconditionError("exact MST needs at least two vectors");
  if (vectors.size() > cap) {
    throw ParameterError("exact MST limited to " + std::to_string(cap) + " vectors; use k-NN mode");
  }
  return kernels::prim_mst(unit_rows_checked(vectors));
}

SpanningForest approx_mst(std::span<const Vector> vectors, std::size_t k) {
  if (vectors.size() < 2) throw PreconditionError("approximate MST needs at least two vectors");
  if (k < 1) throw ParameterError("k must be at least 1");
  const DenseRows unit = unit_rows_checked(vectors);
  const auto neighbors = kernels::knn(unit, k);

  std::vector<Edge> edges;
  edges.reserve(unit.rows * std::min(k, unit.rows - 1));
  for (std::size_t i = 0; i < neighbors.size(); ++i) {
    for (const auto& nb : neighbors[i]) {
      auto u = static_cast<std::uint32_t>(i);
      auto v = nb.index;
      if (u > v) std::swap(u, v);
      edges.push_back({u, v, nb.distance});
    }
  }
  // symmetric graph: keep each undirected edge once
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
  });
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](const Edge& a, const Edge& b) { return a.u == b.u && a.v == b.v; }),
              edges.end());
  auto forest = kernels::kruskal(unit.rows, std::move(edges));
  return {std::move(forest.edges), forest.components};
}

EdgeLengthSummary avg_mst_edge_length(std::span<const Edge> edges, std::span<const std::size_t> classes) {
  std::set<std::tuple<double, std::size_t, std::size_t>> counted;
  double sum = 0.0;
  for (const auto& e : edges) {
    if (!(e.weight > 0.0)) continue;
    std::size_t a = classes[e.u];
    std::size_t b = classes[e.v];
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    if (counted.emplace(e.weight, a, b).second) sum += e.weight;
  }
  EdgeLengthSummary out;
  out.counted_edges = counted.size();
  if (counted.empty()) {
    out.degenerate = true;
    return out;
  }
  out.mean = sum / static_cast<double>(counted.size());
  return out;
}

EdgeLengthSummary avg_mst_edge_length(std::span<const Edge> edges) {
  std::uint32_t max_vertex = 0;
  for (const auto& e : edges) max_vertex = std::max({max_vertex, e.u, e.v});
  std::vector<std::size_t> identity(edges.empty() ? 0 : max_vertex + 1);
  for (std::size_t i = 0; i < identity.size(); ++i) identity[i] = i;
  return avg_mst_edge_length(edges, identity);
}

SemanticReport semantic_metrics(std::span<const std::optional<Vector>> review_vectors,
                                const SemanticOptions& options) {
  SemanticReport report;
  std::vector<Vector> present;
  present.reserve(review_vectors.size());
  for (const auto& v : review_vectors) {
    if (!v || kernels::norm(*v) == 0.0) {
      ++report.excluded_reviews;
    } else {
      present.push_back(*v);
    }
  }
  if (present.empty()) throw UndefinedMetricError("no review has an embedding");

  const auto classes = distinct_classes(present);
  report.vectors = present.size();
  report.distinct_vectors = *std::max_element(classes.begin(), classes.end()) + 1;
  report.semantic_ratio = static_cast<double>(report.distinct_vectors) / static_cast<double>(present.size());

  const bool use_exact = options.mst == MstChoice::exact ||
                         (options.mst == MstChoice::automatic && present.size() <= options.exact_cap);
  report.mst_mode = use_exact ? MstMode::exact : MstMode::approximate_knn;
  report.k = use_exact ? 0 : options.knn_k;
  if (present.size() < 2) {
    report.degenerate = true;
    return report;
  }

  std::vector<Edge> edges;
  if (use_exact) {
    edges = exact_mst(present, std::max(options.exact_cap, options.mst == MstChoice::exact ? present.size() : 0));
    report.components = 1;
  } else {
    auto forest = approx_mst(present, options.knn_k);
    edges = std::move(forest.edges);
    report.components = forest.components;
  }
  const auto summary = avg_mst_edge_length(edges, classes);
  report.avg_mst_edge_length = summary.mean;
  report.degenerate = summary.degenerate;
  return report;
}

}  // namespace corpus_audit
