#pragma once

#include <span>
#include <vector>

namespace corpus_audit {

// Dense real vector: review, user, or word embedding.
using Vector = std::vector<double>;

// Row-major matrix of equally sized vectors, used by the bulk kernels.
struct DenseRows {
  std::vector<double> values;
  std::size_t rows = 0;
  std::size_t dim = 0;

  std::span<const double> row(std::size_t i) const { return {values.data() + i * dim, dim}; }
  std::span<double> row(std::size_t i) { return {values.data() + i * dim, dim}; }
};

}  // namespace corpus_audit
