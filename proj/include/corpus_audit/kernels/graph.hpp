#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "corpus_audit/vector.hpp"

namespace corpus_audit {

struct Edge {
  std::uint32_t u = 0;
  std::uint32_t v = 0;
  double weight = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

}  // namespace corpus_audit

namespace corpus_audit::kernels {

struct Neighbor {
  std::uint32_t index = 0;
  double distance = 0.0;
};

// Prim over the complete cosine-distance graph of unit rows. O(N^2) time, O(N) memory.
// Ties in the frontier are broken by lowest vertex index.
std::vector<Edge> prim_mst(const DenseRows& unit);

// k nearest neighbors of every row (self excluded), sorted by (distance, index).
// Candidates come from blocked float GEMM; the final ranking uses exact double distances.
std::vector<std::vector<Neighbor>> knn(const DenseRows& unit, std::size_t k);

// Kruskal over an edge list; returns the minimum spanning forest and its component count.
struct Forest {
  std::vector<Edge> edges;
  std::size_t components = 0;
};
Forest kruskal(std::size_t vertex_count, std::vector<Edge> edges);

namespace reference {

std::vector<Edge> prim_mst(const DenseRows& unit);
std::vector<std::vector<Neighbor>> knn(const DenseRows& unit, std::size_t k);

}  // namespace reference

}  // namespace corpus_audit::kernels
