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

#include "strahler/rational.hpp"

#include <cstdlib>

#include "strahler/errors.hpp"

namespace strahler {

namespace {

BigInt from_int64(std::int64_t v) {
  BigInt out;
  // mpz_class has no portable int64 constructor on every platform.
  mpz_set_si(out.get_mpz_t(), static_cast<long>(v));
  return out;
}

}  // namespace

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  Rational q(from_int64(num), from_int64(den));
  q.canonicalize();
  return q;
}

Rational pow(const Rational& base, int exp) {
  if (exp < 0) {
    if (base == 0) throw DomainError("negative power of zero");
    return Rational(1) / pow(base, -exp);
  }
  Rational out(1);
  Rational b = base;
  unsigned e = static_cast<unsigned>(exp);
  while (e != 0) {
    if (e & 1u) out *= b;
    e >>= 1;
    if (e != 0) b *= b;
  }
  return out;
}

Rational pow4(int e) {
  BigInt p;
  mpz_ui_pow_ui(p.get_mpz_t(), 4, static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? Rational(BigInt(1), p) : Rational(p);
}

BigInt double_factorial_odd(int k) {
  BigInt out(1);
  for (long v = 2L * k - 1; v > 1; v -= 2) out *= v;
  return out;
}

BigInt binomial(unsigned n, unsigned k) {
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
  Rational q;
  if (text.empty() || q.set_str(text, 10) != 0 || q.get_den() == 0) {
    throw DomainError("not a rational number: '" + text + "'");
  }
  q.canonicalize();
  return q;
}

std::size_t bit_size(const Rational& q) {
  return mpz_sizeinbase(q.get_num_mpz_t(), 2) +
         mpz_sizeinbase(q.get_den_mpz_t(), 2);
}

}  // namespace strahler
