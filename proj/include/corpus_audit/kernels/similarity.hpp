#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "corpus_audit/vector.hpp"

namespace corpus_audit::kernels {

// Per-row statistics against all other rows of a unit-vector set:
// the mean cosine similarity and the nearest-neighbor cosine distance.
struct SimilarityStats {
  std::vector<double> mean_similarity;
  std::vector<double> nn_distance;
  std::vector<std::uint32_t> nn_index;
};

// Requires rows >= 2. Mean similarity comes from the column sum of all rows; the nearest
// neighbor from a blocked GEMM shortlist re-ranked with dot(), so nn_distance matches the
// pairwise reference exactly and mean_similarity to within a few ulps.
SimilarityStats similarity_stats(const DenseRows& unit);

// Nearest-neighbor distances for a subset of rows, searching all rows.
std::vector<double> nearest_distances(const DenseRows& unit, const std::vector<std::uint32_t>& rows);

namespace reference {
SimilarityStats similarity_stats(const DenseRows& unit);
}

}  // namespace corpus_audit::kernels
