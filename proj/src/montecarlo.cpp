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

#include "strahler/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <thread>

#include "strahler/errors.hpp"

namespace strahler {

namespace {

void validate_kind(const CltKind& kind) {
  if (kind.q < 1 || kind.r < 1) throw DomainError("orders must be positive");
}

void validate_run(std::size_t n, std::size_t samples, unsigned workers) {
  if (n < 2) throw DomainError("experiments need n >= 2");
  if (samples < 1) throw DomainError("experiments need at least one sample");
  if (workers < 1) throw DomainError("experiments need at least one worker");
  if (n > (std::size_t{1} << 30)) throw DomainError("magnitude too large");
}

using SampleVisitor = std::function<void(
    unsigned worker, std::size_t index, std::span<const std::uint64_t> counts)>;

// Draws `samples` trees split across workers and calls visit with the branch
// counts of each. Each worker owns its sampler, counter and RNG stream.
void for_each_sample(std::size_t n, std::size_t samples, std::uint64_t seed,
                     unsigned workers, const SampleVisitor& visit) {
  auto body = [&](unsigned w) {
    const std::size_t begin = samples * w / workers;
    const std::size_t end = samples * (w + 1) / workers;
    Rng rng = worker_rng(seed, w);
    RemySampler sampler;
    BranchCounter counter;
    std::vector<std::uint64_t> counts;
    for (std::size_t i = begin; i < end; ++i) {
      counter.count(sampler.sample(n, rng), counts);
      visit(w, i, counts);
    }
  };
  if (workers == 1) {
    body(0);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body, w);
  for (auto& t : pool) t.join();
}

std::uint64_t count_at(std::span<const std::uint64_t> counts, int order) {
  return order >= 1 && static_cast<std::size_t>(order) <= counts.size()
             ? counts[order - 1]
             : 0;
}

Histogram make_histogram(std::span<const double> sorted, std::size_t bins) {
  Histogram h;
  const double lo = sorted.front();
  double hi = sorted.back();
  if (hi <= lo) hi = lo + 1.0;
  h.edges.resize(bins + 1);
  for (std::size_t b = 0; b <= bins; ++b) {
    h.edges[b] = lo + (hi - lo) * static_cast<double>(b) / bins;
  }
  h.counts.assign(bins, 0);
  for (double x : sorted) {
    auto b = static_cast<std::size_t>((x - lo) / (hi - lo) * bins);
    ++h.counts[std::min(b, bins - 1)];
  }
  return h;
}

}  // namespace

Rational predicted_variance(const CltKind& kind) {
  validate_kind(kind);
  const Rational spread = (pow4(kind.r) - 1) / 3;
  if (kind.type == CltKind::Type::kCount) return spread * pow4(-2 * kind.r);
  return spread * pow4(-(2 * kind.r - kind.q + 1));
}

Rational gap_one_ratio_variance(int order) {
  if (order < 1) throw DomainError("order must be positive");
  return pow4(order - 3);
}

void StreamingMoments::add(double x) {
  const double n1 = static_cast<double>(count_);
  ++count_;
  const double n = static_cast<double>(count_);
  const double delta = x - mean_;
  const double delta_n = delta / n;
  const double delta_n2 = delta_n * delta_n;
  const double term1 = delta * delta_n * n1;
  mean_ += delta_n;
  m4_ += term1 * delta_n2 * (n * n - 3 * n + 3) + 6 * delta_n2 * m2_ -
         4 * delta_n * m3_;
  m3_ += term1 * delta_n * (n - 2) - 3 * delta_n * m2_;
  m2_ += term1;
}

void StreamingMoments::merge(const StreamingMoments& o) {
  if (o.count_ == 0) return;
  if (count_ == 0) {
    *this = o;
    return;
  }
  const double na = static_cast<double>(count_);
  const double nb = static_cast<double>(o.count_);
  const double n = na + nb;
  const double d = o.mean_ - mean_;
  const double d2 = d * d;
  const double m2 = m2_ + o.m2_ + d2 * na * nb / n;
  const double m3 = m3_ + o.m3_ + d2 * d * na * nb * (na - nb) / (n * n) +
                    3 * d * (na * o.m2_ - nb * m2_) / n;
  const double m4 = m4_ + o.m4_ +
                    d2 * d2 * na * nb * (na * na - na * nb + nb * nb) /
                        (n * n * n) +
                    6 * d2 * (na * na * o.m2_ + nb * nb * m2_) / (n * n) +
                    4 * d * (na * o.m3_ - nb * m3_) / n;
  mean_ += d * nb / n;
  m2_ = m2;
  m3_ = m3;
  m4_ = m4;
  count_ += o.count_;
}

double StreamingMoments::variance() const {
  return count_ < 2 ? 0.0 : m2_ / static_cast<double>(count_ - 1);
}

double normal_cdf(double x, double mu, double sigma2) {
  return 0.5 * std::erfc(-(x - mu) / std::sqrt(2.0 * sigma2));
}

double ks_distance(std::span<const double> sorted, double mu, double sigma2) {
  if (sorted.empty()) throw DomainError("KS distance of an empty sample");
  if (!(sigma2 > 0)) throw DomainError("KS distance needs sigma2 > 0");
  const double total = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double cdf = normal_cdf(sorted[i], mu, sigma2);
    const double below = static_cast<double>(i) / total;
    const double above = static_cast<double>(i + 1) / total;
    d = std::max({d, above - cdf, cdf - below});
  }
  return std::clamp(d, 0.0, 1.0);
}

unsigned default_worker_count() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

Rng worker_rng(std::uint64_t seed, unsigned worker) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(worker), 0x5eedu};
  return Rng(seq);
}

std::vector<McSummary> run_experiments(std::span<const CltKind> kinds,
                                       std::size_t n, std::size_t samples,
                                       std::uint64_t seed, unsigned workers,
                                       std::size_t hist_bins) {
  validate_run(n, samples, workers);
  for (const auto& k : kinds) validate_kind(k);
  const std::size_t nk = kinds.size();

  std::vector<double> centers(nk);
  for (std::size_t k = 0; k < nk; ++k) centers[k] = pow4(-kinds[k].r).get_d();
  const double root_n = std::sqrt(static_cast<double>(n));
  const double magnitude = static_cast<double>(n);

  // values[k][i], moments[w][k], zeros[w][k]
  std::vector<std::vector<double>> values(nk, std::vector<double>(samples));
  std::vector<std::vector<StreamingMoments>> moments(
      workers, std::vector<StreamingMoments>(nk));
  std::vector<std::vector<std::uint64_t>> zeros(
      workers, std::vector<std::uint64_t>(nk, 0));

  for_each_sample(n, samples, seed, workers,
                  [&](unsigned w, std::size_t i,
                      std::span<const std::uint64_t> counts) {
                    for (std::size_t k = 0; k < nk; ++k) {
                      const CltKind& kind = kinds[k];
                      double ratio = 0.0;
                      if (kind.type == CltKind::Type::kCount) {
                        ratio = static_cast<double>(count_at(counts, kind.r + 1)) /
                                magnitude;
                      } else {
                        const std::uint64_t below = count_at(counts, kind.q);
                        if (below == 0) {
                          ++zeros[w][k];
                        } else {
                          ratio = static_cast<double>(
                                      count_at(counts, kind.q + kind.r)) /
                                  static_cast<double>(below);
                        }
                      }
                      const double x = root_n * (ratio - centers[k]);
                      values[k][i] = x;
                      moments[w][k].add(x);
                    }
                  });

  std::vector<McSummary> out;
  out.reserve(nk);
  for (std::size_t k = 0; k < nk; ++k) {
    StreamingMoments total;
    std::uint64_t zero_total = 0;
    for (unsigned w = 0; w < workers; ++w) {
      total.merge(moments[w][k]);
      zero_total += zeros[w][k];
    }
    McSummary s;
    s.kind = kinds[k];
    s.n = n;
    s.count = total.count();
    s.mean = total.mean();
    s.variance = total.variance();
    s.m3 = total.central3();
    s.m4 = total.central4();
    s.zero_ratio_frequency =
        static_cast<double>(zero_total) / static_cast<double>(samples);
    s.predicted_variance = predicted_variance(kinds[k]);
    auto& v = values[k];
    std::sort(v.begin(), v.end());
    s.ks_distance = ks_distance(v, 0.0, s.predicted_variance.get_d());
    if (hist_bins > 0) s.histogram = make_histogram(v, hist_bins);
    out.push_back(std::move(s));
  }
  return out;
}

McSummary run_experiment(const CltExperiment& e) {
  const CltKind kinds[] = {e.kind};
  return run_experiments(kinds, e.n, e.samples, e.seed, e.workers,
                         e.hist_bins)
      .front();
}

std::vector<HortonResult> horton_check(std::span<const int> orders,
                                       std::size_t n, std::size_t samples,
                                       std::uint64_t seed, unsigned workers,
                                       double tolerance) {
  validate_run(n, samples, workers);
  for (int r : orders) {
    if (r < 1) throw DomainError("orders must be positive");
  }
  const std::size_t no = orders.size();
  std::vector<std::vector<std::uint64_t>> exceed(
      workers, std::vector<std::uint64_t>(no, 0));
  for_each_sample(n, samples, seed, workers,
                  [&](unsigned w, std::size_t,
                      std::span<const std::uint64_t> counts) {
                    for (std::size_t k = 0; k < no; ++k) {
                      const std::uint64_t below = count_at(counts, orders[k]);
                      const double ratio =
                          below == 0 ? 0.0
                                     : static_cast<double>(
                                           count_at(counts, orders[k] + 1)) /
                                           static_cast<double>(below);
                      if (std::abs(ratio - 0.25) > tolerance) ++exceed[w][k];
                    }
                  });
  std::vector<HortonResult> out;
  for (std::size_t k = 0; k < no; ++k) {
    HortonResult h;
    h.r = orders[k];
    h.samples = samples;
    for (unsigned w = 0; w < workers; ++w) h.exceedances += exceed[w][k];
    h.frequency =
        static_cast<double>(h.exceedances) / static_cast<double>(samples);
    out.push_back(h);
  }
  return out;
}

}  // namespace strahler
