// Parallel kernels against their serial references on synthetic data.
// Usage: bench_kernels [rows] [dim] [threads]

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>

#include "corpus_audit/kernels/graph.hpp"
#include "corpus_audit/kernels/ngram_count.hpp"
#include "corpus_audit/kernels/similarity.hpp"
#include "corpus_audit/kernels/vector_ops.hpp"

using namespace corpus_audit;

namespace {

double time_ms(const std::function<void()>& f, int reps = 3) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t).count());
  }
  return best;
}

void row(const char* name, double par, double ref, bool same) {
  std::printf("%-18s %10.1f %10.1f %8.2fx  %s\n", name, par, ref, ref / par, same ? "agree" : "DIFFERENT");
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t rows = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 4000;
  const std::size_t dim = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 100;
  if (argc > 3) omp_set_num_threads(std::atoi(argv[3]));

  std::mt19937_64 rng(1);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Vector> vecs(rows, Vector(dim));
  for (auto& v : vecs)
    for (auto& x : v) x = g(rng);
  const auto unit = kernels::normalize_rows(vecs);

  std::vector<kernels::IdSequence> seqs(rows * 5);
  std::uniform_int_distribution<std::uint32_t> word(0, 5000);
  for (auto& s : seqs) {
    s.resize(5 + rng() % 60);
    for (auto& w : s) w = word(rng);
  }

  std::printf("rows=%zu dim=%zu threads=%d\n", rows, dim, omp_get_max_threads());
  std::printf("%-18s %10s %10s %9s\n", "kernel", "par ms", "ref ms", "speedup");

  std::vector<Edge> mp, mr;
  const double prim_p = time_ms([&] { mp = kernels::prim_mst(unit); }, 1);
  const double prim_r = time_ms([&] { mr = kernels::reference::prim_mst(unit); }, 1);
  row("prim_mst", prim_p, prim_r, mp == mr);

  std::vector<std::vector<kernels::Neighbor>> kp, kr;
  const double knn_p = time_ms([&] { kp = kernels::knn(unit, 30); }, 1);
  const double knn_r = time_ms([&] { kr = kernels::reference::knn(unit, 30); }, 1);
  bool knn_same = kp.size() == kr.size();
  for (std::size_t i = 0; knn_same && i < kp.size(); ++i) {
    for (std::size_t k = 0; k < kp[i].size(); ++k) {
      knn_same = knn_same && kp[i][k].index == kr[i][k].index && kp[i][k].distance == kr[i][k].distance;
    }
  }
  row("knn k=30", knn_p, knn_r, knn_same);

  kernels::SimilarityStats sp, sr;
  const double sim_p = time_ms([&] { sp = kernels::similarity_stats(unit); });
  const double sim_r = time_ms([&] { sr = kernels::reference::similarity_stats(unit); });
  double worst_mean = 0.0;
  for (std::size_t i = 0; i < rows; ++i) worst_mean = std::max(worst_mean, std::abs(sp.mean_similarity[i] - sr.mean_similarity[i]));
  row("similarity_stats", sim_p, sim_r, worst_mean <= 1e-12 && sp.nn_distance == sr.nn_distance);

  for (int n : {1, 3}) {
    kernels::NgramSummary np, nr;
    const double ng_p = time_ms([&] { np = kernels::count_ngrams(seqs, n); });
    const double ng_r = time_ms([&] { nr = kernels::reference::count_ngrams(seqs, n); });
    row(n == 1 ? "count_ngrams n=1" : "count_ngrams n=3", ng_p, ng_r, np == nr);
  }
  return 0;
}
