#include <algorithm>
#include <limits>
#include <numeric>

#include "corpus_audit/errors.hpp"
#include "corpus_audit/kernels/graph.hpp"
#include "corpus_audit/kernels/vector_ops.hpp"

namespace corpus_audit::kernels {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Candidate {
  double key = kInf;
  std::size_t index = std::numeric_limits<std::size_t>::max();

  bool better_than(const Candidate& o) const {
    return key < o.key || (key == o.key && index < o.index);
  }
};

void require_vertices(const DenseRows& unit) {
  if (unit.rows < 2) throw PreconditionError("MST needs at least two vectors");
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    std::size_t root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
      const std::size_t next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

}  // namespace

std::vector<Edge> prim_mst(const DenseRows& unit) {
  require_vertices(unit);
  const std::size_t n = unit.rows;
  std::vector<char> in_tree(n, 0);
  std::vector<double> key(n, kInf);
  std::vector<std::uint32_t> parent(n, 0);
  std::vector<Edge> edges;
  edges.reserve(n - 1);

  std::size_t current = 0;
  in_tree[0] = 1;
  for (std::size_t step = 1; step < n; ++step) {
    Candidate best;
    const auto cur_row = unit.row(current);
#pragma omp parallel
    {
      Candidate local;
#pragma omp for schedule(static) nowait
      for (std::ptrdiff_t vv = 0; vv < static_cast<std::ptrdiff_t>(n); ++vv) {
        const auto v = static_cast<std::size_t>(vv);
        if (in_tree[v]) continue;
        const double d = unit_distance(cur_row, unit.row(v));
        if (d < key[v]) {
          key[v] = d;
          parent[v] = static_cast<std::uint32_t>(current);
        }
        const Candidate c{key[v], v};
        if (c.better_than(local)) local = c;
      }
#pragma omp critical(prim_argmin)
      {
        if (local.better_than(best)) best = local;
      }
    }
    in_tree[best.index] = 1;
    edges.push_back({parent[best.index], static_cast<std::uint32_t>(best.index), best.key});
    current = best.index;
  }
  return edges;
}

Forest kruskal(std::size_t vertex_count, std::vector<Edge> edges) {
  for (auto& e : edges) {
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    if (a.weight != b.weight) return a.weight < b.weight;
    if (a.u != b.u) return a.u < b.u;
    return a.v < b.v;
  });
  DisjointSets sets(vertex_count);
  Forest forest;
  for (const auto& e : edges) {
    if (sets.unite(e.u, e.v)) forest.edges.push_back(e);
  }
  forest.components = vertex_count - forest.edges.size();
  return forest;
}

namespace reference {

std::vector<Edge> prim_mst(const DenseRows& unit) {
  require_vertices(unit);
  const std::size_t n = unit.rows;
  std::vector<bool> in_tree(n, false);
  std::vector<double> key(n, kInf);
  std::vector<std::uint32_t> parent(n, 0);
  std::vector<Edge> edges;
  std::size_t current = 0;
  in_tree[0] = true;
  for (std::size_t step = 1; step < n; ++step) {
    Candidate best;
    for (std::size_t v = 0; v < n; ++v) {
      if (in_tree[v]) continue;
      const double d = unit_distance(unit.row(current), unit.row(v));
      if (d < key[v]) {
        key[v] = d;
        parent[v] = static_cast<std::uint32_t>(current);
      }
      if (Candidate{key[v], v}.better_than(best)) best = {key[v], v};
    }
    in_tree[best.index] = true;
    edges.push_back({parent[best.index], static_cast<std::uint32_t>(best.index), best.key});
    current = best.index;
  }
  return edges;
}

}  // namespace reference

}  // namespace corpus_audit::kernels
