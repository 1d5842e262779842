#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "corpus_audit/vector.hpp"

namespace corpus_audit::kernels {

// Distances below this are rounding noise between identical directions.
inline constexpr double kDistanceSnap = 1e-12;

// Fixed four-way association so every caller gets bitwise-identical sums.
inline double dot(std::span<const double> a, std::span<const double> b) noexcept {
  const std::size_t n = a.size();
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += a[i] * b[i];
    s1 += a[i + 1] * b[i + 1];
    s2 += a[i + 2] * b[i + 2];
    s3 += a[i + 3] * b[i + 3];
  }
  for (; i < n; ++i) s0 += a[i] * b[i];
  return (s0 + s1) + (s2 + s3);
}

inline double norm(std::span<const double> a) noexcept { return std::sqrt(dot(a, a)); }

inline double distance_from_similarity(double cosine) noexcept {
  const double d = 1.0 - cosine;
  if (d < kDistanceSnap) return 0.0;
  return std::min(d, 2.0);
}

// Cosine distance between unit vectors, clamped to [0, 2].
inline double unit_distance(std::span<const double> a, std::span<const double> b) noexcept {
  return distance_from_similarity(dot(a, b));
}

// Rows scaled to unit length. Rows with zero norm are left as zeros.
DenseRows normalize_rows(std::span<const Vector> vectors);

}  // namespace corpus_audit::kernels
