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

// Terminating Gauss hypergeometric series and the moment generating function
// of S_{2,n} written with them.
//
// Exact mode never evaluates exp(t): the identities are polynomial in
// x = e^t, so callers pass x directly as a rational.

#ifndef STRAHLER_HYPERGEOM_HPP_
#define STRAHLER_HYPERGEOM_HPP_

#include <cstddef>
#include <vector>

#include "strahler/rational.hpp"

namespace strahler {

// 2F1(a, b; c; z). Valid when a or b is a non-positive integer (so the
// series is a polynomial in z) and c is not a non-positive integer.
struct HypParams {
  Rational a;
  Rational b;
  Rational c;
};

// Index of the last possibly non-zero term: min(-a, -b) over the upper
// parameters that are non-positive integers. Throws DomainError when the
// series does not terminate or c is a non-positive integer.
std::size_t terminating_index(const HypParams& p);

// Coefficients (a)_j (b)_j / ((c)_j j!) for j = 0..terminating_index.
std::vector<Rational> hyp2f1_coefficients(const HypParams& p);

Rational hyp2f1_terminating(const HypParams& p, const Rational& z);
double hyp2f1_terminating(const HypParams& p, double z);

// 2F1((2-n)/2, (3-n)/2; 2; .), n >= 2, and the shifted family
// 2F1((3-n)/2, (4-n)/2; 2; .), n >= 3.
HypParams mgf_params(int n);
HypParams mgf_shifted_params(int n);

// 2^{n-2} n! (n-1)! / (2n-2)!
Rational mgf_prefactor(int n);

// M_{2,n} at x = e^t via the hypergeometric closed form.
Rational mgf_s2_hypergeometric(int n, const Rational& x);
// M_{2,n} at x = e^t as sum_m P_n(S_2 = m) x^m.
Rational mgf_s2_direct(int n, const Rational& x);
// Float M_{2,n}(t) through the closed form.
double mgf_s2(int n, double t);

// d/dt F(e^t) - ((n-2)/2) [F(e^t) - G(e^t)] at e^t = x, where F uses
// mgf_params(n), G uses mgf_shifted_params(n), and the derivative is taken
// term by term. Zero for every n >= 3 and x > 0.
Rational check_derivative_identity(int n, const Rational& x);

}  // namespace strahler

#endif  // STRAHLER_HYPERGEOM_HPP_
