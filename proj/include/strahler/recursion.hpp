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

// Order-lowering recursions shared by the exact (Rational) and float
// (double) backends.
//
// Removing the order-1 branches of a uniform tree with n leaves leaves a
// uniform tree with m = S_2 leaves, and every order r branch becomes an
// order r-1 branch. So the law of any functional of (S_q, S_{q+r}) at
// magnitude n is the kernel-weighted mixture, over m, of the same law one
// order down at magnitude m. The single-leaf tree has S_r = 0 for r >= 2.
//
// All memo tables are thread_local: each thread builds its own, and entries
// are never erased while the thread lives (references stay valid until
// clear_recursion_caches()).

#ifndef STRAHLER_RECURSION_HPP_
#define STRAHLER_RECURSION_HPP_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <tuple>
#include <type_traits>
#include <utility>
#include <vector>

#include "strahler/errors.hpp"
#include "strahler/rational.hpp"

namespace strahler {

enum class Backend { kExact, kFloat };

// P_n(S_2 = m) for m in [0, n/2]; entry 0 is zero. n >= 2.
template <class T>
const std::vector<T>& kernel_weights(int n);
template <>
const std::vector<Rational>& kernel_weights<Rational>(int n);
template <>
const std::vector<double>& kernel_weights<double>(int n);

void clear_recursion_caches();

// Exact non-negative fraction small enough for 64-bit arithmetic; used as
// the support key of ratio laws in both backends.
struct SmallFraction {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  static SmallFraction make(std::uint64_t num, std::uint64_t den) {
    if (num == 0) return {0, 1};
    const std::uint64_t g = std::gcd(num, den);
    return {num / g, den / g};
  }
  Rational to_rational() const {
    return Rational(BigInt(std::to_string(num)), BigInt(std::to_string(den)));
  }
  friend bool operator<(const SmallFraction& a, const SmallFraction& b) {
    return static_cast<unsigned __int128>(a.num) * b.den <
           static_cast<unsigned __int128>(b.num) * a.den;
  }
  friend bool operator==(const SmallFraction&, const SmallFraction&) = default;
};

template <class T>
using RatioLaw = std::map<SmallFraction, T>;

namespace detail {

template <class T>
T scalar_from(std::int64_t v) {
  if constexpr (std::is_same_v<T, double>) {
    return static_cast<double>(v);
  } else {
    return make_rational(v);
  }
}

// Accumulates weight * vec into out, growing out as needed.
template <class T>
void axpy(std::vector<T>& out, const T& weight, const std::vector<T>& vec) {
  if (out.size() < vec.size()) out.resize(vec.size(), T(0));
  for (std::size_t j = 0; j < vec.size(); ++j) {
    if (vec[j] != 0) out[j] += weight * vec[j];
  }
}

template <class T>
struct Caches {
  std::map<std::pair<int, int>, std::vector<T>> dist;
  std::map<std::tuple<int, int, int>, RatioLaw<T>> ratio;
};

template <class T>
Caches<T>& caches() {
  thread_local Caches<T> c;
  return c;
}

}  // namespace detail

// Law of S_{r,n} as a dense vector indexed by branch count j, r >= 1, n >= 1.
template <class T>
const std::vector<T>& dist_vector(int r, int n) {
  if (r < 1 || n < 1) throw DomainError("dist_vector needs r >= 1, n >= 1");
  auto& memo = detail::caches<T>().dist;
  if (auto it = memo.find({r, n}); it != memo.end()) return it->second;

  std::vector<T> out;
  if (r == 1) {
    out.assign(n + 1, T(0));
    out[n] = T(1);
  } else if (n == 1) {
    out.assign(1, T(1));
  } else if (r == 2) {
    out = kernel_weights<T>(n);
  } else {
    const auto& w = kernel_weights<T>(n);
    for (int m = 1; m <= n / 2; ++m) {
      detail::axpy(out, w[m], dist_vector<T>(r - 1, m));
    }
  }
  while (out.size() > 1 && out.back() == 0) out.pop_back();
  return memo.emplace(std::make_pair(r, n), std::move(out)).first->second;
}

// Applies one mixing step: out[m] = sum_j w_m[j] inner[j] for 2 <= m <= max_n,
// out[1] = at_one. inner must cover indices up to max_n / 2.
template <class T>
std::vector<T> mix_down(const std::vector<T>& inner, int max_n,
                        const T& at_one) {
  std::vector<T> out(std::max(max_n, 1) + 1, T(0));
  out[1] = at_one;
  for (int m = 2; m <= max_n; ++m) {
    const auto& w = kernel_weights<T>(m);
    Accumulator<T> acc;
    for (int j = 1; j <= m / 2; ++j) acc.add(w[j] * inner[j]);
    out[m] = acc.value();
  }
  return out;
}

// <f(S_{r,n})> for r >= 1, n >= 1, via r-1 mixing steps from S_{1,m} = m.
template <class T>
T expect_count(int r, int n, const std::function<T(std::int64_t)>& f) {
  if (r < 1 || n < 1) throw DomainError("expect_count needs r >= 1, n >= 1");
  if (r == 1) return f(n);
  const int bottom = n >> (r - 1);
  std::vector<T> g(std::max(bottom, 1) + 1, T(0));
  for (int m = 0; m <= bottom; ++m) g[m] = f(m);
  const T at_one = f(0);
  for (int level = 2; level <= r; ++level) {
    g = mix_down(g, n >> (r - level), at_one);
  }
  return g[n];
}

// <f(S_{q+r,n} / S_{q,n})>, ratio 0 when S_{q,n} = 0; q, r >= 1, n >= 1.
template <class T>
T expect_ratio(int q, int r, int n, const std::function<T(const T&)>& f) {
  if (q < 1 || r < 1 || n < 1) {
    throw DomainError("expect_ratio needs q, r, n >= 1");
  }
  const T zero_value = f(T(0));
  auto base_at = [&](int m) -> T {
    if (m == 1) return zero_value;
    const auto& p = dist_vector<T>(1 + r, m);
    Accumulator<T> acc;
    const T denom = detail::scalar_from<T>(m);
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (p[j] != 0) {
        acc.add(p[j] * f(detail::scalar_from<T>(static_cast<std::int64_t>(j)) / denom));
      }
    }
    return acc.value();
  };
  if (q == 1) return base_at(n);
  const int bottom = n >> (q - 1);
  std::vector<T> e(std::max(bottom, 1) + 1, T(0));
  for (int m = 1; m <= bottom; ++m) e[m] = base_at(m);
  for (int level = 2; level <= q; ++level) {
    e = mix_down(e, n >> (q - level), zero_value);
  }
  return e[n];
}

// Law of S_{q+r,n} / S_{q,n} with exact support keys; q, r >= 1, n >= 1.
template <class T>
const RatioLaw<T>& ratio_law(int q, int r, int n) {
  if (q < 1 || r < 1 || n < 1) throw DomainError("ratio_law needs q, r, n >= 1");
  auto& memo = detail::caches<T>().ratio;
  if (auto it = memo.find({q, r, n}); it != memo.end()) return it->second;

  RatioLaw<T> out;
  if (n == 1) {
    out.emplace(SmallFraction{0, 1}, T(1));
  } else if (q == 1) {
    const auto& p = dist_vector<T>(1 + r, n);
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (p[j] != 0) out[SmallFraction::make(j, n)] += p[j];
    }
  } else {
    const auto& w = kernel_weights<T>(n);
    for (int m = 1; m <= n / 2; ++m) {
      for (const auto& [v, p] : ratio_law<T>(q - 1, r, m)) out[v] += w[m] * p;
    }
  }
  return memo.emplace(std::make_tuple(q, r, n), std::move(out)).first->second;
}

}  // namespace strahler

#endif  // STRAHLER_RECURSION_HPP_
