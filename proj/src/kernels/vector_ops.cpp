#include "corpus_audit/kernels/vector_ops.hpp"

#include "corpus_audit/errors.hpp"

namespace corpus_audit::kernels {

DenseRows normalize_rows(std::span<const Vector> vectors) {
  DenseRows out;
  out.rows = vectors.size();
  out.dim = vectors.empty() ? 0 : vectors.front().size();
  out.values.assign(out.rows * out.dim, 0.0);
  for (std::size_t i = 0; i < out.rows; ++i) {
    if (vectors[i].size() != out.dim) throw PreconditionError("vectors differ in dimension");
    const double n = norm(vectors[i]);
    if (n == 0.0) continue;
    auto row = out.row(i);
    for (std::size_t k = 0; k < out.dim; ++k) row[k] = vectors[i][k] / n;
  }
  return out;
}

}  // namespace corpus_audit::kernels
