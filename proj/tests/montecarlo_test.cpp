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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "strahler/errors.hpp"
#include "strahler/exact.hpp"
#include "strahler/montecarlo.hpp"

namespace strahler {
namespace {

Rational Q(std::int64_t a, std::int64_t b = 1) { return make_rational(a, b); }

TEST(PredictedVarianceTest, Examples) {
  EXPECT_EQ(predicted_variance(CltKind::ratio(1, 1)), Q(1, 16));
  EXPECT_EQ(predicted_variance(CltKind::ratio(2, 1)), Q(1, 4));
  EXPECT_EQ(gap_one_ratio_variance(2), Q(1, 4));
  EXPECT_EQ(predicted_variance(CltKind::count(1)), Q(1, 16));
  EXPECT_EQ(predicted_variance(CltKind::count(2)), Q(5, 256));
  EXPECT_THROW(predicted_variance(CltKind::ratio(0, 1)), DomainError);
  EXPECT_THROW(predicted_variance(CltKind::count(0)), DomainError);
  EXPECT_THROW(gap_one_ratio_variance(0), DomainError);
}

TEST(PredictedVarianceTest, GapOneFormsAgree) {
  for (int q = 1; q <= 8; ++q) {
    EXPECT_EQ(gap_one_ratio_variance(q), predicted_variance(CltKind::ratio(q, 1)));
  }
  // Count variances shrink with r, gap-one ratio variances grow fourfold.
  for (int r = 1; r < 6; ++r) {
    EXPECT_GT(predicted_variance(CltKind::count(r)),
              predicted_variance(CltKind::count(r + 1)));
    EXPECT_EQ(gap_one_ratio_variance(r + 1), 4 * gap_one_ratio_variance(r));
  }
}

TEST(StreamingMomentsTest, MatchesTwoPass) {
  std::mt19937_64 rng(3);
  std::gamma_distribution<double> gamma(2.0, 1.5);
  std::vector<double> xs(10000);
  for (auto& x : xs) x = gamma(rng) + 1e6;  // large offset stresses stability
  StreamingMoments s;
  for (double x : xs) s.add(x);
  double mean = 0;
  for (double x : xs) mean += x;
  mean /= xs.size();
  double m2 = 0, m3 = 0, m4 = 0;
  for (double x : xs) {
    const double d = x - mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  const double n = static_cast<double>(xs.size());
  EXPECT_EQ(s.count(), xs.size());
  EXPECT_NEAR(s.mean(), mean, 1e-8);
  EXPECT_NEAR(s.variance(), m2 / (n - 1), 1e-8);
  EXPECT_NEAR(s.central3(), m3 / n, 1e-6);
  EXPECT_NEAR(s.central4(), m4 / n, 1e-5);
}

TEST(StreamingMomentsTest, MergeMatchesSequential) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> normal(0.3, 2.0);
  StreamingMoments all, a, b, c;
  for (int i = 0; i < 3000; ++i) {
    const double x = normal(rng) + (i % 7 == 0 ? 5.0 : 0.0);
    all.add(x);
    (i < 1000 ? a : i < 2500 ? b : c).add(x);
  }
  StreamingMoments merged;
  merged.merge(a);
  merged.merge(b);
  merged.merge(c);
  merged.merge(StreamingMoments{});
  EXPECT_EQ(merged.count(), all.count());
  EXPECT_NEAR(merged.mean(), all.mean(), 1e-12);
  EXPECT_NEAR(merged.variance(), all.variance(), 1e-11);
  EXPECT_NEAR(merged.central3(), all.central3(), 1e-10);
  EXPECT_NEAR(merged.central4(), all.central4(), 1e-9);
}

TEST(StreamingMomentsTest, Degenerate) {
  StreamingMoments s;
  EXPECT_EQ(s.variance(), 0);
  s.add(2.0);
  EXPECT_EQ(s.variance(), 0);
  EXPECT_EQ(s.mean(), 2.0);
}

TEST(KsTest, Examples) {
  const std::vector<double> one = {0.0};
  EXPECT_DOUBLE_EQ(ks_distance(one, 0.0, 1.0), 0.5);
  const std::vector<double> same(100, 0.7);
  EXPECT_GE(ks_distance(same, 0.0, 1.0), 0.5);
  EXPECT_THROW(ks_distance({}, 0.0, 1.0), DomainError);
  EXPECT_THROW(ks_distance(one, 0.0, 0.0), DomainError);
  EXPECT_THROW(ks_distance(one, 0.0, -1.0), DomainError);
}

TEST(KsTest, NormalSamplesAreClose) {
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> xs(100000);
  for (auto& x : xs) x = normal(rng);
  std::sort(xs.begin(), xs.end());
  const double d = ks_distance(xs, 0.0, 1.0);
  EXPECT_GE(d, 0.0);
  EXPECT_LE(d, 0.006);
  // Wrong variance is detected.
  EXPECT_GT(ks_distance(xs, 0.0, 4.0), 0.1);
}

TEST(KsTest, NormalCdf) {
  EXPECT_DOUBLE_EQ(normal_cdf(0.0, 0.0, 1.0), 0.5);
  EXPECT_NEAR(normal_cdf(1.959963984540054, 0.0, 1.0), 0.975, 1e-12);
  EXPECT_NEAR(normal_cdf(-0.5, 0.0, 1.0 / 16), 0.02275013194817921, 1e-12);
}

TEST(RunExperimentTest, DeterministicForSeedAndWorkers) {
  for (unsigned workers : {1u, 3u}) {
    const CltExperiment e{CltKind::ratio(1, 1), 300, 2000, 77, workers, 16};
    const McSummary a = run_experiment(e);
    const McSummary b = run_experiment(e);
    EXPECT_TRUE(a == b) << workers;
    ASSERT_TRUE(a.histogram.has_value());
    EXPECT_EQ(a.histogram->edges.size(), 17u);
    std::uint64_t total = 0;
    for (auto c : a.histogram->counts) total += c;
    EXPECT_EQ(total, 2000u);
  }
  const McSummary other =
      run_experiment({CltKind::ratio(1, 1), 300, 2000, 78, 1, 0});
  EXPECT_FALSE(other == run_experiment({CltKind::ratio(1, 1), 300, 2000, 77, 1, 0}));
}

TEST(RunExperimentTest, CountOneEqualsFirstRatio) {
  const McSummary c = run_experiment({CltKind::count(1), 512, 3000, 9, 2, 0});
  const McSummary r = run_experiment({CltKind::ratio(1, 1), 512, 3000, 9, 2, 0});
  EXPECT_EQ(c.mean, r.mean);
  EXPECT_EQ(c.variance, r.variance);
  EXPECT_EQ(c.m3, r.m3);
  EXPECT_EQ(c.m4, r.m4);
  EXPECT_EQ(c.ks_distance, r.ks_distance);
  EXPECT_EQ(c.predicted_variance, r.predicted_variance);
}

TEST(RunExperimentTest, SharedTreesMatchSingleRuns) {
  const CltKind kinds[] = {CltKind::ratio(2, 1), CltKind::count(2),
                           CltKind::ratio(1, 2)};
  const auto many = run_experiments(kinds, 700, 1500, 5, 2);
  ASSERT_EQ(many.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_TRUE(many[i] == run_experiment({kinds[i], 700, 1500, 5, 2, 0}));
  }
}

TEST(RunExperimentTest, SmallMagnitudeMatchesExactLaw) {
  const int n = 20;
  const std::size_t samples = 100000;
  const McSummary s =
      run_experiment({CltKind::count(1), static_cast<std::size_t>(n), samples,
                      31, 1, 0});
  // The statistic is sqrt(n)(S_2/n - 1/4); its exact mean and variance
  // follow from the law of S_2.
  const ExactDist d = dist_S(2, n);
  const double root_n = std::sqrt(static_cast<double>(n));
  const double mean = root_n * (d.mean().get_d() / n - 0.25);
  const double var = d.variance().get_d() / n;
  EXPECT_NEAR(s.mean, mean, 4 * std::sqrt(var / samples));
  const double var_se = std::sqrt((s.m4 - var * var) / samples);
  EXPECT_NEAR(s.variance, var, 4 * var_se);
  EXPECT_EQ(s.zero_ratio_frequency, 0);
}

TEST(RunExperimentTest, ZeroConventionFrequency) {
  const int n = 6;
  const std::size_t samples = 50000;
  const McSummary s = run_experiment(
      {CltKind::ratio(3, 1), static_cast<std::size_t>(n), samples, 8, 1, 0});
  const double p0 = dist_S(3, n).probability(Q(0)).get_d();
  ASSERT_GT(p0, 0);
  EXPECT_NEAR(s.zero_ratio_frequency, p0,
              4 * std::sqrt(p0 * (1 - p0) / samples));
}

TEST(RunExperimentTest, VarianceTrendsAcrossOrders) {
  const CltKind kinds[] = {CltKind::ratio(1, 1), CltKind::ratio(2, 1),
                           CltKind::ratio(3, 1), CltKind::count(1),
                           CltKind::count(2),    CltKind::count(3)};
  const auto s = run_experiments(kinds, 4096, 2000, 12, 1);
  EXPECT_LT(s[0].variance, s[1].variance);
  EXPECT_LT(s[1].variance, s[2].variance);
  EXPECT_GT(s[3].variance, s[4].variance);
  EXPECT_GT(s[4].variance, s[5].variance);
  EXPECT_NEAR(s[1].variance / s[0].variance, 4.0, 1.0);
  for (const auto& x : s) {
    EXPECT_GE(x.variance, 0);
    EXPECT_GE(x.ks_distance, 0);
    EXPECT_LE(x.ks_distance, 1);
    EXPECT_GE(x.zero_ratio_frequency, 0);
    EXPECT_LE(x.zero_ratio_frequency, 1);
  }
}

TEST(RunExperimentTest, Validation) {
  EXPECT_THROW(run_experiment({CltKind::ratio(1, 1), 1, 10, 1, 1, 0}),
               DomainError);
  EXPECT_THROW(run_experiment({CltKind::ratio(1, 1), 10, 0, 1, 1, 0}),
               DomainError);
  EXPECT_THROW(run_experiment({CltKind::ratio(1, 1), 10, 10, 1, 0, 0}),
               DomainError);
  EXPECT_THROW(run_experiment({CltKind::ratio(0, 1), 10, 10, 1, 1, 0}),
               DomainError);
}

TEST(WorkerRngTest, StreamsDiffer) {
  Rng a = worker_rng(1, 0), b = worker_rng(1, 1), c = worker_rng(2, 0);
  const auto x = a(), y = b(), z = c();
  EXPECT_NE(x, y);
  EXPECT_NE(x, z);
  EXPECT_EQ(worker_rng(1, 0)(), x);
  EXPECT_GE(default_worker_count(), 1u);
}

TEST(HortonTest, RatiosConcentrate) {
  const int orders[] = {1, 2, 3};
  const auto res = horton_check(orders, 4096, 500, 21, 2);
  ASSERT_EQ(res.size(), 3u);
  for (const auto& h : res) {
    EXPECT_EQ(h.samples, 500u);
    EXPECT_LE(h.frequency, 0.1) << h.r;
  }
  EXPECT_EQ(res, horton_check(orders, 4096, 500, 21, 2));
  // A tolerance of zero counts every sample whose ratio is not exactly 1/4.
  const auto strict = horton_check(orders, 64, 200, 21, 1, 0.0);
  EXPECT_GT(strict[0].frequency, 0.5);
  const int bad[] = {0};
  EXPECT_THROW(horton_check(bad, 64, 10, 1, 1), DomainError);
}

}  // namespace
}  // namespace strahler
