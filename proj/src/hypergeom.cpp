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

#include "strahler/hypergeom.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "strahler/errors.hpp"
#include "strahler/recursion.hpp"

namespace strahler {

namespace {

bool is_nonpositive_integer(const Rational& v) {
  return v.get_den() == 1 && v <= 0;
}

std::optional<std::size_t> witness(const Rational& v) {
  if (!is_nonpositive_integer(v)) return std::nullopt;
  const BigInt neg = -v.get_num();
  if (!neg.fits_ulong_p()) throw DomainError("terminating index too large");
  return static_cast<std::size_t>(neg.get_ui());
}

}  // namespace

std::size_t terminating_index(const HypParams& p) {
  if (is_nonpositive_integer(p.c)) {
    throw DomainError("lower parameter c = " + to_string(p.c) +
                      " is a non-positive integer");
  }
  const auto wa = witness(p.a);
  const auto wb = witness(p.b);
  if (!wa && !wb) {
    throw DomainError("series with a = " + to_string(p.a) + ", b = " +
                      to_string(p.b) + " does not terminate");
  }
  if (wa && wb) return std::min(*wa, *wb);
  return wa ? *wa : *wb;
}

std::vector<Rational> hyp2f1_coefficients(const HypParams& p) {
  const std::size_t last = terminating_index(p);
  std::vector<Rational> coeffs;
  coeffs.reserve(last + 1);
  Rational term(1);
  coeffs.push_back(term);
  for (std::size_t j = 0; j < last; ++j) {
    const Rational jq(static_cast<unsigned long>(j));
    term *= (p.a + jq) * (p.b + jq) / ((p.c + jq) * (jq + 1));
    coeffs.push_back(term);
  }
  return coeffs;
}

Rational hyp2f1_terminating(const HypParams& p, const Rational& z) {
  const auto coeffs = hyp2f1_coefficients(p);
  Rational acc(0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = acc * z + *it;
  }
  return acc;
}

double hyp2f1_terminating(const HypParams& p, double z) {
  const std::size_t last = terminating_index(p);
  const double a = p.a.get_d();
  const double b = p.b.get_d();
  const double c = p.c.get_d();
  Accumulator<double> sum;
  double term = 1.0;
  sum.add(term);
  for (std::size_t j = 0; j < last; ++j) {
    const double jd = static_cast<double>(j);
    term *= (a + jd) * (b + jd) / ((c + jd) * (jd + 1.0)) * z;
    sum.add(term);
  }
  return sum.value();
}

HypParams mgf_params(int n) {
  if (n < 2) throw DomainError("mgf needs n >= 2");
  return {make_rational(2 - n, 2), make_rational(3 - n, 2), Rational(2)};
}

HypParams mgf_shifted_params(int n) {
  if (n < 3) throw DomainError("shifted parameters need n >= 3");
  return {make_rational(3 - n, 2), make_rational(4 - n, 2), Rational(2)};
}

Rational mgf_prefactor(int n) {
  if (n < 2) throw DomainError("mgf needs n >= 2");
  BigInt top;
  mpz_ui_pow_ui(top.get_mpz_t(), 2, static_cast<unsigned long>(n - 2));
  top *= n;
  // n! (n-1)! / (2n-2)! = n / C(2n-2, n-1)
  Rational out(top, binomial(2u * n - 2, n - 1));
  out.canonicalize();
  return out;
}

Rational mgf_s2_hypergeometric(int n, const Rational& x) {
  return mgf_prefactor(n) * x * hyp2f1_terminating(mgf_params(n), x);
}

Rational mgf_s2_direct(int n, const Rational& x) {
  if (n < 2) throw DomainError("mgf needs n >= 2");
  const auto& w = kernel_weights<Rational>(n);
  Rational acc(0);
  Rational xm = x;
  for (int m = 1; m <= n / 2; ++m) {
    acc += w[m] * xm;
    xm *= x;
  }
  return acc;
}

double mgf_s2(int n, double t) {
  const double x = std::exp(t);
  return mgf_prefactor(n).get_d() * x * hyp2f1_terminating(mgf_params(n), x);
}

Rational check_derivative_identity(int n, const Rational& x) {
  if (n < 3) throw DomainError("derivative identity needs n >= 3");
  if (x <= 0) throw DomainError("x = e^t must be positive");
  // d/dt sum_j c_j e^{jt} = sum_j j c_j x^j
  const auto coeffs = hyp2f1_coefficients(mgf_params(n));
  Rational lhs(0);
  Rational xj(1);
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    lhs += Rational(static_cast<unsigned long>(j)) * coeffs[j] * xj;
    xj *= x;
  }
  const Rational rhs = make_rational(n - 2, 2) *
                       (hyp2f1_terminating(mgf_params(n), x) -
                        hyp2f1_terminating(mgf_shifted_params(n), x));
  return lhs - rhs;
}

}  // namespace strahler
