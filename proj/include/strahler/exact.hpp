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

// Exact laws of branch counts S_{r,n} and bifurcation ratios on the uniform
// random model.

#ifndef STRAHLER_EXACT_HPP_
#define STRAHLER_EXACT_HPP_

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "strahler/rational.hpp"
#include "strahler/recursion.hpp"

namespace strahler {

// Finite distribution with exact support values and probabilities. Every
// stored probability is positive and they sum to exactly one.
class ExactDist {
 public:
  using Atoms = std::map<Rational, Rational>;

  // Drops zero-probability atoms. Throws DomainError on a negative
  // probability or a total different from one.
  static ExactDist from_atoms(Atoms atoms);
  static ExactDist point_mass(const Rational& value);

  const Atoms& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  Rational probability(const Rational& value) const;
  Rational mean() const;
  Rational variance() const;

  friend bool operator==(const ExactDist&, const ExactDist&) = default;

 private:
  ExactDist() = default;
  Atoms atoms_;
};

// The mixing weights P_n(S_2 = m), m = 1..floor(n/2).
struct Kernel {
  int n = 0;
  std::vector<Rational> weights;  // weights[m]; weights[0] == 0
};

Kernel kernel(int n);

// P_n(S_{2,n} = m); zero outside 1 <= m <= floor(n/2). Throws DomainError for
// n < 2.
Rational transition_prob(int n, int m);

// Law of S_{r,n}, r >= 1, n >= 1.
ExactDist dist_S(int r, int n);

// Law of S_{q+r,n} / S_{q,n}, zero when S_{q,n} = 0; q, r >= 1, n >= 2.
ExactDist dist_ratio(int q, int r, int n);

// Float-backend counterparts: probabilities as doubles, support exact.
std::vector<double> dist_S_float(int r, int n);
RatioLaw<double> dist_ratio_float(int q, int r, int n);

// sum_i coefficients[i] x^i
struct Polynomial {
  std::vector<Rational> coefficients;
  Rational operator()(const Rational& x) const;
};

// x^exponent; negative exponents need 0 outside the support.
struct Power {
  int exponent = 1;
};

using Integrand = std::variant<Polynomial, Power>;

Rational expect(const ExactDist& dist, const Integrand& f);

// {"support":[{"num":..,"den":..,"p_num":..,"p_den":..},...]} sorted by
// value. Integers are written as bare JSON numbers of any length.
std::string to_json(const ExactDist& dist);

}  // namespace strahler

#endif  // STRAHLER_EXACT_HPP_
