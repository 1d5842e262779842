#include "corpus_audit/kernels/similarity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "corpus_audit/errors.hpp"
#include "corpus_audit/kernels/vector_ops.hpp"

namespace corpus_audit::kernels {

namespace {

constexpr std::size_t kRowBlock = 256;
constexpr std::size_t kColBlock = 4096;
constexpr std::size_t kShortlist = 4;

void require_pairs(const DenseRows& unit) {
  if (unit.rows < 2) throw PreconditionError("similarity statistics need at least two vectors");
}

SimilarityStats allocate(std::size_t n) {
  SimilarityStats s;
  s.mean_similarity.resize(n);
  s.nn_distance.resize(n);
  s.nn_index.resize(n);
  return s;
}

}  // namespace

SimilarityStats similarity_stats(const DenseRows& unit) {
  require_pairs(unit);
  const std::size_t n = unit.rows;
  const std::size_t dim = unit.dim;
  auto stats = allocate(n);

  // Mean similarity to the others is (u_i . sum_j u_j - u_i . u_i) / (N - 1).
  // Compensated column sums keep the cancellation error near one ulp of the total.
  Vector total(dim, 0.0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t cc = 0; cc < static_cast<std::ptrdiff_t>(dim); ++cc) {
    const auto c = static_cast<std::size_t>(cc);
    double sum = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = unit.values[i * dim + c];
      const double t = sum + v;
      comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
      sum = t;
    }
    total[c] = sum + comp;
  }
  const double denom = static_cast<double>(n - 1);

  using Rows = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const Eigen::Map<const Rows> x(unit.values.data(), static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dim));
  const std::size_t row_blocks = (n + kRowBlock - 1) / kRowBlock;

#pragma omp parallel
  {
    Rows sims;
    std::vector<std::array<std::pair<double, std::uint32_t>, kShortlist>> top;
#pragma omp for schedule(dynamic, 1)
    for (std::ptrdiff_t bb = 0; bb < static_cast<std::ptrdiff_t>(row_blocks); ++bb) {
      const std::size_t r0 = static_cast<std::size_t>(bb) * kRowBlock;
      const std::size_t rn = std::min(kRowBlock, n - r0);
      top.assign(rn, {});
      for (auto& t : top) t.fill({-std::numeric_limits<double>::infinity(), 0});
      for (std::size_t c0 = 0; c0 < n; c0 += kColBlock) {
        const std::size_t cn = std::min(kColBlock, n - c0);
        sims.noalias() = x.middleRows(static_cast<Eigen::Index>(r0), static_cast<Eigen::Index>(rn)) *
                         x.middleRows(static_cast<Eigen::Index>(c0), static_cast<Eigen::Index>(cn)).transpose();
        for (std::size_t r = 0; r < rn; ++r) {
          auto& t = top[r];
          const double* srow = sims.data() + r * cn;
          for (std::size_t c = 0; c < cn; ++c) {
            if (srow[c] <= t[kShortlist - 1].first || c0 + c == r0 + r) continue;
            std::size_t k = kShortlist - 1;
            while (k > 0 && t[k - 1].first < srow[c]) {
              t[k] = t[k - 1];
              --k;
            }
            t[k] = {srow[c], static_cast<std::uint32_t>(c0 + c)};
          }
        }
      }
      // Exact re-rank of the shortlist with the same arithmetic as the reference.
      for (std::size_t r = 0; r < rn; ++r) {
        const std::size_t i = r0 + r;
        const auto ui = unit.row(i);
        double best = std::numeric_limits<double>::infinity();
        std::uint32_t best_j = 0;
        for (const auto& [approx, j] : top[r]) {
          if (approx == -std::numeric_limits<double>::infinity()) continue;
          const double d = distance_from_similarity(dot(ui, unit.row(j)));
          if (d < best || (d == best && j < best_j)) {
            best = d;
            best_j = j;
          }
        }
        stats.mean_similarity[i] = (dot(ui, total) - dot(ui, ui)) / denom;
        stats.nn_distance[i] = best;
        stats.nn_index[i] = best_j;
      }
    }
  }
  return stats;
}

std::vector<double> nearest_distances(const DenseRows& unit, const std::vector<std::uint32_t>& rows) {
  require_pairs(unit);
  std::vector<double> out(rows.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(rows.size()); ++r) {
    const std::size_t i = rows[static_cast<std::size_t>(r)];
    const auto ui = unit.row(i);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < unit.rows; ++j) {
      if (j == i) continue;
      best = std::min(best, unit_distance(ui, unit.row(j)));
    }
    out[static_cast<std::size_t>(r)] = best;
  }
  return out;
}

namespace reference {

SimilarityStats similarity_stats(const DenseRows& unit) {
  require_pairs(unit);
  const std::size_t n = unit.rows;
  auto stats = allocate(n);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    stats.nn_distance[i] = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double c = dot(unit.row(i), unit.row(j));
      sum += c;
      if (distance_from_similarity(c) < stats.nn_distance[i]) {
        stats.nn_distance[i] = distance_from_similarity(c);
        stats.nn_index[i] = static_cast<std::uint32_t>(j);
      }
    }
    stats.mean_similarity[i] = sum / static_cast<double>(n - 1);
  }
  return stats;
}

}  // namespace reference

}  // namespace corpus_audit::kernels
