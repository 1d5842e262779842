#include "corpus_audit/stylistic_outliers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_map>

#include "corpus_audit/embedding.hpp"
#include "corpus_audit/errors.hpp"
#include "corpus_audit/kernels/similarity.hpp"
#include "corpus_audit/kernels/vector_ops.hpp"

namespace corpus_audit {

namespace {

constexpr double kPercentiles[] = {0.01, 0.05, 0.10, 0.25, 0.50, 0.75, 0.90, 0.99};

DenseRows checked_unit_rows(std::span<const Vector> users) {
  if (users.size() < 2) throw PreconditionError("pairwise similarity needs at least two users");
  for (const auto& u : users) {
    if (kernels::norm(u) == 0.0) throw DegenerateVectorError("zero user vector");
  }
  return kernels::normalize_rows(users);
}

std::string percentile_key(double q) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "p%02d", static_cast<int>(std::lround(q * 100)));
  return buf;
}

}  // namespace

std::vector<double> avg_pairwise_similarity(std::span<const Vector> users) {
  return kernels::similarity_stats(checked_unit_rows(users)).mean_similarity;
}

std::vector<double> zscores(std::span<const double> s) {
  std::vector<double> z(s.size(), 0.0);
  if (s.size() < 2) return z;
  double mean = 0.0;
  for (double v : s) mean += v;
  mean /= static_cast<double>(s.size());
  double var = 0.0;
  for (double v : s) var += (v - mean) * (v - mean);
  const double sigma = std::sqrt(var / static_cast<double>(s.size()));
  if (sigma <= 1e-12 * std::max(1.0, std::abs(mean))) return z;
  for (std::size_t i = 0; i < s.size(); ++i) z[i] = (s[i] - mean) / sigma;
  return z;
}

std::vector<std::size_t> global_candidates(std::span<const double> z, double theta_g) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i] <= theta_g) out.push_back(i);
  }
  return out;
}

std::vector<double> nearest_neighbor_distances(std::span<const std::size_t> candidates,
                                               std::span<const Vector> users) {
  const DenseRows unit = checked_unit_rows(users);
  std::vector<std::uint32_t> rows;
  rows.reserve(candidates.size());
  for (auto c : candidates) {
    if (c >= users.size()) throw PreconditionError("candidate index out of range");
    rows.push_back(static_cast<std::uint32_t>(c));
  }
  return kernels::nearest_distances(unit, rows);
}

std::vector<std::size_t> finalize_outliers(std::span<const std::size_t> candidates, std::span<const double> d_nn,
                                           double theta_l) {
  if (candidates.size() != d_nn.size()) throw PreconditionError("d_nn must align with the candidate list");
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    if (d_nn[k] >= theta_l) out.push_back(candidates[k]);
  }
  return out;
}

double percentile(std::vector<double> values, double q) {
  if (values.empty()) throw PreconditionError("percentile of an empty list");
  std::sort(values.begin(), values.end());
  const double pos = std::clamp(q, 0.0, 1.0) * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + (values[hi] - values[lo]) * frac;
}

UserProfiles build_user_profiles(const Corpus& corpus, std::span<const std::optional<Vector>> review_vectors) {
  if (review_vectors.size() != corpus.reviews.size()) {
    throw PreconditionError("review vectors must align with the corpus");
  }
  std::unordered_map<std::string, std::size_t> slot;
  std::vector<std::string> ids;
  std::vector<std::vector<Vector>> grouped;
  for (std::size_t r = 0; r < corpus.reviews.size(); ++r) {
    const auto& id = corpus.reviews[r].user_id;
    auto [it, inserted] = slot.try_emplace(id, ids.size());
    if (inserted) {
      ids.push_back(id);
      grouped.emplace_back();
    }
    if (review_vectors[r]) grouped[it->second].push_back(*review_vectors[r]);
  }
  UserProfiles out;
  for (std::size_t u = 0; u < ids.size(); ++u) {
    if (grouped[u].empty()) {
      out.excluded_users.push_back(ids[u]);
      continue;
    }
    Vector v = embed_user(grouped[u]);
    if (kernels::norm(v) == 0.0) {
      out.excluded_users.push_back(ids[u]);
      continue;
    }
    out.profiles.push_back({ids[u], std::move(v), 0.0, 0.0, std::nullopt});
  }
  return out;
}

OutlierAnalysis detect_outliers(UserProfiles users, const OutlierOptions& options) {
  auto& profiles = users.profiles;
  if (profiles.size() < 2) {
    throw UndefinedMetricError("outlier detection needs at least two users with embeddings");
  }
  std::vector<Vector> vectors;
  vectors.reserve(profiles.size());
  for (const auto& p : profiles) vectors.push_back(p.vector);
  const auto stats = kernels::similarity_stats(checked_unit_rows(vectors));
  const auto z = zscores(stats.mean_similarity);

  OutlierAnalysis a;
  a.report.theta_g = options.theta_g;
  a.report.theta_l = options.theta_l;
  a.report.user_count = profiles.size();
  a.report.excluded_users = users.excluded_users.size();
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    profiles[i].S = stats.mean_similarity[i];
    profiles[i].Z = z[i];
  }
  const auto candidates = global_candidates(z, options.theta_g);
  std::vector<double> cand_d;
  cand_d.reserve(candidates.size());
  for (auto c : candidates) {
    profiles[c].d_nn = stats.nn_distance[c];
    cand_d.push_back(stats.nn_distance[c]);
    a.report.global_candidates.push_back(profiles[c].user_id);
  }
  for (auto o : finalize_outliers(candidates, cand_d, options.theta_l)) {
    a.report.outliers.push_back(profiles[o].user_id);
  }
  a.report.outlier_count = a.report.outliers.size();
  for (double q : kPercentiles) a.report.d_nn_percentiles[percentile_key(q)] = percentile(stats.nn_distance, q);
  a.all_d_nn = stats.nn_distance;
  a.profiles = std::move(profiles);
  return a;
}

std::vector<DnnCurve> d_nn_curves(const OutlierAnalysis& analysis, std::span<const double> thetas) {
  std::vector<DnnCurve> curves;
  for (double theta : thetas) {
    DnnCurve c{theta, {}};
    for (std::size_t i = 0; i < analysis.profiles.size(); ++i) {
      if (analysis.profiles[i].Z <= theta) c.d_nn.push_back(analysis.all_d_nn[i]);
    }
    std::sort(c.d_nn.begin(), c.d_nn.end(), std::greater<>());
    curves.push_back(std::move(c));
  }
  return curves;
}

}  // namespace corpus_audit
