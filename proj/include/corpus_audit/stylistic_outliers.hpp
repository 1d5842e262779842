#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "corpus_audit/corpus_io.hpp"
#include "corpus_audit/vector.hpp"

namespace corpus_audit {

inline constexpr double kDefaultThetaGlobal = -2.0;
inline constexpr double kDefaultThetaLocal = 1e-4;

struct UserProfile {
  std::string user_id;
  Vector vector;  // mean of the user's review embeddings
  double S = 0.0;
  double Z = 0.0;
  std::optional<double> d_nn;  // set for global candidates only
};

// S_i: mean cosine similarity to the other N-1 users.
// Throws PreconditionError for N < 2, DegenerateVectorError for a zero vector.
std::vector<double> avg_pairwise_similarity(std::span<const Vector> users);

// Population z-scores; all zero when the spread vanishes.
std::vector<double> zscores(std::span<const double> s);

// Indices with Z_i <= theta_g, ascending.
std::vector<std::size_t> global_candidates(std::span<const double> z, double theta_g);

// Nearest-neighbor cosine distance of each candidate, searching every user.
std::vector<double> nearest_neighbor_distances(std::span<const std::size_t> candidates,
                                               std::span<const Vector> users);

// Candidates whose d_nn >= theta_l. d_nn is aligned with candidates.
std::vector<std::size_t> finalize_outliers(std::span<const std::size_t> candidates, std::span<const double> d_nn,
                                           double theta_l);

// Linear interpolation between closest ranks (q in [0, 1]). Throws on empty input.
double percentile(std::vector<double> values, double q);

struct UserProfiles {
  std::vector<UserProfile> profiles;        // users with a nonzero mean vector, first-appearance order
  std::vector<std::string> excluded_users;  // no embeddable review, or zero mean vector
};

// Groups review vectors by user. review_vectors is aligned with corpus.reviews.
UserProfiles build_user_profiles(const Corpus& corpus, std::span<const std::optional<Vector>> review_vectors);

struct OutlierOptions {
  double theta_g = kDefaultThetaGlobal;
  double theta_l = kDefaultThetaLocal;
};

struct OutlierReport {
  double theta_g = kDefaultThetaGlobal;
  double theta_l = kDefaultThetaLocal;
  std::size_t user_count = 0;
  std::size_t excluded_users = 0;
  std::vector<std::string> global_candidates;  // U_g
  std::vector<std::string> outliers;           // U_o
  std::size_t outlier_count = 0;
  // Percentiles of the nearest-neighbor distance over all scored users ("p01" is the 1st).
  std::map<std::string, double> d_nn_percentiles;

  friend bool operator==(const OutlierReport&, const OutlierReport&) = default;
};

struct OutlierAnalysis {
  OutlierReport report;
  std::vector<UserProfile> profiles;  // S, Z filled for all; d_nn for candidates
  std::vector<double> all_d_nn;       // aligned with profiles
};

// Full two-stage detection. Throws UndefinedMetricError when fewer than two users remain.
OutlierAnalysis detect_outliers(UserProfiles users, const OutlierOptions& options = {});

// Sorted (descending) d_nn of the global candidates for each theta_g.
struct DnnCurve {
  double theta_g = 0.0;
  std::vector<double> d_nn;
};
std::vector<DnnCurve> d_nn_curves(const OutlierAnalysis& analysis, std::span<const double> thetas);

}  // namespace corpus_audit
