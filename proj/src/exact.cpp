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

#include "strahler/exact.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "strahler/errors.hpp"

namespace strahler {

namespace {

// w[1] = 2^{n-2} n / C(2n-2, n-1), then
// w[m+1] / w[m] = (n-2m)(n-2m-1) / (4 m (m+1)).
std::vector<Rational> exact_kernel(int n) {
  std::vector<Rational> w(n / 2 + 1, Rational(0));
  BigInt top;
  mpz_ui_pow_ui(top.get_mpz_t(), 2, static_cast<unsigned long>(n - 2));
  top *= n;
  w[1] = Rational(top, binomial(2u * n - 2, n - 1));
  w[1].canonicalize();
  for (int m = 1; m < n / 2; ++m) {
    Rational step(BigInt(static_cast<long>(n - 2 * m)) * (n - 2 * m - 1),
                  BigInt(4L * m * (m + 1)));
    step.canonicalize();
    w[m + 1] = w[m] * step;
  }
  return w;
}

// Same ratios in log space, rescaled so the weights sum to one. The absolute
// scale (w[1] ~ 2^{-n}) underflows doubles beyond n ~ 1000.
std::vector<double> float_kernel(int n) {
  const int top = n / 2;
  std::vector<double> logw(top + 1, 0.0);
  double peak = 0.0;
  for (int m = 1; m < top; ++m) {
    logw[m + 1] = logw[m] +
                  std::log(static_cast<double>(n - 2 * m) * (n - 2 * m - 1)) -
                  std::log(4.0 * m * (m + 1));
    peak = std::max(peak, logw[m + 1]);
  }
  std::vector<double> w(top + 1, 0.0);
  Accumulator<double> total;
  for (int m = 1; m <= top; ++m) {
    w[m] = std::exp(logw[m] - peak);
    total.add(w[m]);
  }
  const double norm = total.value();
  for (int m = 1; m <= top; ++m) w[m] /= norm;
  return w;
}

template <class T, class Make>
const std::vector<T>& cached_kernel(int n, Make make) {
  if (n < 2) throw DomainError("kernel needs n >= 2");
  thread_local std::map<int, std::vector<T>> memo;
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  return memo.emplace(n, make(n)).first->second;
}

std::string big_str(const BigInt& v) { return v.get_str(); }

}  // namespace

template <>
const std::vector<Rational>& kernel_weights<Rational>(int n) {
  return cached_kernel<Rational>(n, exact_kernel);
}

template <>
const std::vector<double>& kernel_weights<double>(int n) {
  return cached_kernel<double>(n, float_kernel);
}

void clear_recursion_caches() {
  detail::caches<Rational>() = {};
  detail::caches<double>() = {};
}

ExactDist ExactDist::from_atoms(Atoms atoms) {
  Rational total(0);
  for (auto it = atoms.begin(); it != atoms.end();) {
    if (it->second < 0) throw DomainError("negative probability");
    if (it->second == 0) {
      it = atoms.erase(it);
      continue;
    }
    total += it->second;
    ++it;
  }
  if (total != 1) {
    throw DomainError("probabilities sum to " + to_string(total) + ", not 1");
  }
  ExactDist d;
  d.atoms_ = std::move(atoms);
  return d;
}

ExactDist ExactDist::point_mass(const Rational& value) {
  ExactDist d;
  d.atoms_.emplace(value, Rational(1));
  return d;
}

Rational ExactDist::probability(const Rational& value) const {
  auto it = atoms_.find(value);
  return it == atoms_.end() ? Rational(0) : it->second;
}

Rational ExactDist::mean() const {
  Rational sum(0);
  for (const auto& [v, p] : atoms_) sum += v * p;
  return sum;
}

Rational ExactDist::variance() const {
  const Rational mu = mean();
  Rational sum(0);
  for (const auto& [v, p] : atoms_) sum += (v - mu) * (v - mu) * p;
  return sum;
}

Kernel kernel(int n) { return Kernel{n, kernel_weights<Rational>(n)}; }

Rational transition_prob(int n, int m) {
  if (n < 2) throw DomainError("transition_prob needs n >= 2");
  if (m < 1 || m > n / 2) return Rational(0);
  return kernel_weights<Rational>(n)[m];
}

ExactDist dist_S(int r, int n) {
  if (r < 1 || n < 1) throw DomainError("dist_S needs r >= 1 and n >= 1");
  const auto& p = dist_vector<Rational>(r, n);
  ExactDist::Atoms atoms;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j] != 0) atoms.emplace(Rational(static_cast<unsigned long>(j)), p[j]);
  }
  return ExactDist::from_atoms(std::move(atoms));
}

ExactDist dist_ratio(int q, int r, int n) {
  if (q < 1 || r < 1) throw DomainError("dist_ratio needs q >= 1 and r >= 1");
  if (n < 2) throw DomainError("dist_ratio needs n >= 2");
  ExactDist::Atoms atoms;
  for (const auto& [v, p] : ratio_law<Rational>(q, r, n)) {
    atoms.emplace(v.to_rational(), p);
  }
  return ExactDist::from_atoms(std::move(atoms));
}

std::vector<double> dist_S_float(int r, int n) {
  if (r < 1 || n < 1) throw DomainError("dist_S needs r >= 1 and n >= 1");
  return dist_vector<double>(r, n);
}

RatioLaw<double> dist_ratio_float(int q, int r, int n) {
  if (q < 1 || r < 1) throw DomainError("dist_ratio needs q >= 1 and r >= 1");
  if (n < 2) throw DomainError("dist_ratio needs n >= 2");
  return ratio_law<double>(q, r, n);
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational acc(0);
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
    acc = acc * x + *it;
  }
  return acc;
}

Rational expect(const ExactDist& dist, const Integrand& f) {
  Rational sum(0);
  if (const auto* poly = std::get_if<Polynomial>(&f)) {
    for (const auto& [v, p] : dist.atoms()) sum += (*poly)(v) * p;
    return sum;
  }
  const int k = std::get<Power>(f).exponent;
  if (k < 0 && dist.probability(Rational(0)) != 0) {
    throw DomainError("negative power of a distribution with an atom at 0");
  }
  for (const auto& [v, p] : dist.atoms()) sum += pow(v, k) * p;
  return sum;
}

std::string to_json(const ExactDist& dist) {
  std::ostringstream out;
  out << "{\"support\":[";
  bool first = true;
  for (const auto& [v, p] : dist.atoms()) {
    if (!first) out << ',';
    first = false;
    out << "{\"num\":" << big_str(v.get_num()) << ",\"den\":"
        << big_str(v.get_den()) << ",\"p_num\":" << big_str(p.get_num())
        << ",\"p_den\":" << big_str(p.get_den()) << '}';
  }
  out << "]}";
  return out.str();
}

}  // namespace strahler
