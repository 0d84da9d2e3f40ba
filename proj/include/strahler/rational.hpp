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

#ifndef STRAHLER_RATIONAL_HPP_
#define STRAHLER_RATIONAL_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace strahler {

using BigInt = mpz_class;
using Rational = mpq_class;

// Builds num/den in canonical form. den must be non-zero.
Rational make_rational(std::int64_t num, std::int64_t den = 1);

// base^exp for any integer exponent; a negative exponent requires base != 0.
Rational pow(const Rational& base, int exp);

// 4^e as an exact rational, e may be negative.
Rational pow4(int e);

// (2k-1)!! with the convention (-1)!! = 1.
BigInt double_factorial_odd(int k);

BigInt binomial(unsigned n, unsigned k);

// "num/den", or just "num" when the denominator is one.
std::string to_string(const Rational& q);

// Parses "a", "a/b" or "-a/b".
Rational parse_rational(const std::string& text);

inline double to_double(const Rational& q) { return q.get_d(); }

// Number of bits needed for numerator plus denominator.
std::size_t bit_size(const Rational& q);

// Neumaier-compensated accumulator; plain addition for exact scalars.
template <class T>
class Accumulator {
 public:
  void add(const T& v) { sum_ += v; }
  T value() const { return sum_; }

 private:
  T sum_ = T(0);
};

template <>
class Accumulator<double> {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if ((sum_ >= 0 ? sum_ : -sum_) >= (v >= 0 ? v : -v)) {
      carry_ += (sum_ - t) + v;
    } else {
      carry_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace strahler

#endif  // STRAHLER_RATIONAL_HPP_
