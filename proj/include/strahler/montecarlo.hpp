// Copyright 2026 The Strahler Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Monte Carlo checks of the central limit theorems for branch counts and
// bifurcation ratios.
//
// Determinism: the sample index range [0, N) is split into `workers`
// contiguous blocks; block w draws from worker_rng(seed, w) and the per-block
// summaries are merged in block order. The same (seed, workers) always
// yields bit-identical results, on any machine with the same standard
// library.

#ifndef STRAHLER_MONTECARLO_HPP_
#define STRAHLER_MONTECARLO_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "strahler/rational.hpp"
#include "strahler/tree.hpp"

namespace strahler {

// count(r): sqrt(n) (S_{r+1}/n - 4^{-r})
// ratio(q, r): sqrt(n) (S_{q+r}/S_q - 4^{-r}), zero ratio when S_q = 0
struct CltKind {
  enum class Type { kCount, kRatio };

  Type type = Type::kRatio;
  int q = 1;
  int r = 1;

  static CltKind count(int r) { return {Type::kCount, 1, r}; }
  static CltKind ratio(int q, int r) { return {Type::kRatio, q, r}; }

  std::string type_name() const {
    return type == Type::kCount ? "count" : "ratio";
  }
  friend bool operator==(const CltKind&, const CltKind&) = default;
};

// Limit variances: (4^r-1)/(3 16^r) for counts and (4^r-1)/(3 4^{2r-q+1})
// for ratios.
Rational predicted_variance(const CltKind& kind);
// 4^{order-3}, the gap-one ratio S_{order+1}/S_{order}.
Rational gap_one_ratio_variance(int order);

struct CltExperiment {
  CltKind kind;
  std::size_t n = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::size_t hist_bins = 0;
};

struct Histogram {
  std::vector<double> edges;  // bins + 1 edges
  std::vector<std::uint64_t> counts;
  friend bool operator==(const Histogram&, const Histogram&) = default;
};

struct McSummary {
  CltKind kind;
  std::size_t n = 0;
  std::uint64_t count = 0;
  double mean = 0;
  double variance = 0;  // unbiased
  double m3 = 0;        // third central moment
  double m4 = 0;        // fourth central moment
  double ks_distance = 0;
  double zero_ratio_frequency = 0;
  Rational predicted_variance;
  std::optional<Histogram> histogram;

  friend bool operator==(const McSummary&, const McSummary&) = default;
};

// One-pass central moments up to order four with an exact-order pairwise
// merge.
class StreamingMoments {
 public:
  void add(double x);
  void merge(const StreamingMoments& other);

  std::uint64_t count() const { return count_; }
  double mean() const { return mean_; }
  double variance() const;  // unbiased; 0 for fewer than two values
  double central3() const { return count_ ? m3_ / count_ : 0.0; }
  double central4() const { return count_ ? m4_ / count_ : 0.0; }

 private:
  std::uint64_t count_ = 0;
  double mean_ = 0, m2_ = 0, m3_ = 0, m4_ = 0;
};

double normal_cdf(double x, double mu, double sigma2);

// sup_x |F_N(x) - Phi((x - mu)/sigma)| for samples sorted ascending.
double ks_distance(std::span<const double> sorted, double mu, double sigma2);

unsigned default_worker_count();
Rng worker_rng(std::uint64_t seed, unsigned worker);

McSummary run_experiment(const CltExperiment& experiment);

// Several statistics from the same sampled trees; element i equals
// run_experiment for kinds[i] with the same (n, samples, seed, workers).
std::vector<McSummary> run_experiments(std::span<const CltKind> kinds,
                                       std::size_t n, std::size_t samples,
                                       std::uint64_t seed, unsigned workers,
                                       std::size_t hist_bins = 0);

struct HortonResult {
  int r = 1;
  std::uint64_t exceedances = 0;
  std::uint64_t samples = 0;
  double frequency = 0;
  friend bool operator==(const HortonResult&, const HortonResult&) = default;
};

// Empirical P(|S_{r+1}/S_r - 1/4| > tolerance) for each requested order.
std::vector<HortonResult> horton_check(std::span<const int> orders,
                                       std::size_t n, std::size_t samples,
                                       std::uint64_t seed, unsigned workers,
                                       double tolerance = 0.05);

}  // namespace strahler

#endif  // STRAHLER_MONTECARLO_HPP_
