#include <algorithm>
#include <limits>
#include <queue>

#include <Eigen/Dense>

#include "corpus_audit/errors.hpp"
#include "corpus_audit/kernels/graph.hpp"
#include "corpus_audit/kernels/vector_ops.hpp"

namespace corpus_audit::kernels {

namespace {

constexpr std::size_t kRowBlock = 256;
constexpr std::size_t kColBlock = 8192;
// Extra float candidates kept per row so the exact re-rank can repair near ties.
constexpr std::size_t kCandidateSlack = 8;

using FloatRows = Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct FloatCandidate {
  float distance;
  std::uint32_t index;
  bool operator<(const FloatCandidate& o) const {
    return distance < o.distance || (distance == o.distance && index < o.index);
  }
};

bool neighbor_less(const Neighbor& a, const Neighbor& b) {
  return a.distance < b.distance || (a.distance == b.distance && a.index < b.index);
}

std::vector<Neighbor> exact_rank(const DenseRows& unit, std::size_t i,
                                 const std::vector<std::uint32_t>& candidates, std::size_t k) {
  std::vector<Neighbor> out;
  out.reserve(candidates.size());
  for (auto j : candidates) out.push_back({j, unit_distance(unit.row(i), unit.row(j))});
  std::sort(out.begin(), out.end(), neighbor_less);
  if (out.size() > k) out.resize(k);
  return out;
}

}  // namespace

std::vector<std::vector<Neighbor>> knn(const DenseRows& unit, std::size_t k) {
  const std::size_t n = unit.rows;
  if (n < 2) throw PreconditionError("k-NN needs at least two vectors");
  if (k == 0) throw ParameterError("k must be at least 1");
  const std::size_t k_final = std::min(k, n - 1);
  const std::size_t pool = std::min(n - 1, k + kCandidateSlack);

  FloatRows x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(unit.dim));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < unit.dim; ++c) {
      x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
          static_cast<float>(unit.values[i * unit.dim + c]);
    }
  }

  std::vector<std::vector<Neighbor>> result(n);
  const std::size_t row_blocks = (n + kRowBlock - 1) / kRowBlock;

#pragma omp parallel
  {
    FloatRows sims;
    std::vector<std::priority_queue<FloatCandidate>> heaps;
    std::vector<std::uint32_t> candidates;
#pragma omp for schedule(dynamic, 1)
    for (std::ptrdiff_t bb = 0; bb < static_cast<std::ptrdiff_t>(row_blocks); ++bb) {
      const std::size_t r0 = static_cast<std::size_t>(bb) * kRowBlock;
      const std::size_t rn = std::min(kRowBlock, n - r0);
      heaps.assign(rn, {});
      for (std::size_t c0 = 0; c0 < n; c0 += kColBlock) {
        const std::size_t cn = std::min(kColBlock, n - c0);
        sims.noalias() = x.middleRows(static_cast<Eigen::Index>(r0), static_cast<Eigen::Index>(rn)) *
                         x.middleRows(static_cast<Eigen::Index>(c0), static_cast<Eigen::Index>(cn))
                             .transpose();
        for (std::size_t r = 0; r < rn; ++r) {
          auto& heap = heaps[r];
          const std::size_t i = r0 + r;
          const float* srow = sims.data() + r * cn;
          float worst = heap.size() < pool ? std::numeric_limits<float>::infinity() : heap.top().distance;
          for (std::size_t c = 0; c < cn; ++c) {
            const float d = 1.0f - srow[c];
            if (d > worst) continue;
            const std::size_t j = c0 + c;
            if (j == i) continue;
            const FloatCandidate cand{d, static_cast<std::uint32_t>(j)};
            if (heap.size() < pool) {
              heap.push(cand);
            } else if (cand < heap.top()) {
              heap.pop();
              heap.push(cand);
            } else {
              continue;
            }
            if (heap.size() == pool) worst = heap.top().distance;
          }
        }
      }
      for (std::size_t r = 0; r < rn; ++r) {
        candidates.clear();
        auto& heap = heaps[r];
        while (!heap.empty()) {
          candidates.push_back(heap.top().index);
          heap.pop();
        }
        result[r0 + r] = exact_rank(unit, r0 + r, candidates, k_final);
      }
    }
  }
  return result;
}

namespace reference {

std::vector<std::vector<Neighbor>> knn(const DenseRows& unit, std::size_t k) {
  const std::size_t n = unit.rows;
  if (n < 2) throw PreconditionError("k-NN needs at least two vectors");
  if (k == 0) throw ParameterError("k must be at least 1");
  const std::size_t k_final = std::min(k, n - 1);
  std::vector<std::vector<Neighbor>> result(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Neighbor> all;
    all.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) all.push_back({static_cast<std::uint32_t>(j), unit_distance(unit.row(i), unit.row(j))});
    }
    std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k_final), all.end(),
                      neighbor_less);
    all.resize(k_final);
    result[i] = std::move(all);
  }
  return result;
}

}  // namespace reference

}  // namespace corpus_audit::kernels
