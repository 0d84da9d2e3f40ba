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

#include <cmath>

#include "strahler/errors.hpp"
#include "strahler/exact.hpp"
#include "strahler/oracle.hpp"

namespace strahler {
namespace {

BigInt factorial(unsigned long k) {
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), k);
  return out;
}

// The kernel coefficient straight from factorials, independent of the
// running-product evaluation in the library.
Rational kernel_by_factorials(int n, int m) {
  BigInt pow2;
  mpz_ui_pow_ui(pow2.get_mpz_t(), 2, n - 2 * m);
  const BigInt top = factorial(n) * factorial(n - 1) * factorial(n - 2) * pow2;
  const BigInt bottom = factorial(2 * n - 2) * factorial(n - 2 * m) *
                        factorial(m) * factorial(m - 1);
  Rational out(top, bottom);
  out.canonicalize();
  return out;
}

Rational Q(std::int64_t a, std::int64_t b = 1) { return make_rational(a, b); }

TEST(KernelTest, SmallValues) {
  EXPECT_EQ(transition_prob(4, 1), Q(4, 5));
  EXPECT_EQ(transition_prob(4, 2), Q(1, 5));
  EXPECT_EQ(transition_prob(2, 1), 1);
  EXPECT_EQ(transition_prob(4, 0), 0);
  EXPECT_EQ(transition_prob(4, 3), 0);
  EXPECT_EQ(transition_prob(4, -1), 0);
  EXPECT_THROW(transition_prob(1, 1), DomainError);
  EXPECT_THROW(kernel(0), DomainError);
}

TEST(KernelTest, MatchesFactorialFormula) {
  for (int n = 2; n <= 60; ++n) {
    for (int m = 1; m <= n / 2; ++m) {
      EXPECT_EQ(transition_prob(n, m), kernel_by_factorials(n, m))
          << "n=" << n << " m=" << m;
    }
  }
}

TEST(KernelTest, SumsToOne) {
  for (int n = 2; n <= 400; ++n) {
    const Kernel k = kernel(n);
    EXPECT_EQ(k.n, n);
    ASSERT_EQ(k.weights.size(), static_cast<std::size_t>(n / 2 + 1));
    EXPECT_EQ(k.weights[0], 0);
    Rational total(0);
    for (const auto& w : k.weights) {
      EXPECT_GE(w, 0);
      total += w;
    }
    EXPECT_EQ(total, 1) << n;
  }
}

TEST(KernelTest, FloatWeightsTrackExact) {
  for (int n : {2, 7, 64, 300}) {
    const auto& exact = kernel_weights<Rational>(n);
    const auto& approx = kernel_weights<double>(n);
    ASSERT_EQ(exact.size(), approx.size());
    for (std::size_t m = 1; m < exact.size(); ++m) {
      EXPECT_NEAR(approx[m], exact[m].get_d(), 1e-13 + 1e-12 * exact[m].get_d());
    }
  }
}

TEST(ExactDistTest, Construction) {
  const ExactDist d = ExactDist::from_atoms({{Q(1), Q(1, 3)}, {Q(2), Q(2, 3)},
                                             {Q(5), Q(0)}});
  EXPECT_EQ(d.size(), 2u);
  EXPECT_EQ(d.probability(Q(5)), 0);
  EXPECT_EQ(d.mean(), Q(5, 3));
  EXPECT_EQ(d.variance(), Q(2, 9));
  EXPECT_THROW(ExactDist::from_atoms({{Q(1), Q(1, 2)}}), DomainError);
  EXPECT_THROW(ExactDist::from_atoms({{Q(1), Q(3, 2)}, {Q(2), Q(-1, 2)}}),
               DomainError);
  EXPECT_EQ(ExactDist::point_mass(Q(3)).probability(Q(3)), 1);
}

TEST(DistSTest, Examples) {
  EXPECT_EQ(dist_S(1, 7), ExactDist::point_mass(Q(7)));
  EXPECT_EQ(dist_S(2, 4),
            ExactDist::from_atoms({{Q(1), Q(4, 5)}, {Q(2), Q(1, 5)}}));
  EXPECT_EQ(dist_S(2, 1), ExactDist::point_mass(Q(0)));
  EXPECT_EQ(dist_S(3, 3), ExactDist::point_mass(Q(0)));
  EXPECT_EQ(oracle::compare(oracle::enumerated_dist_S(3, 6), dist_S(3, 6)), "");
  EXPECT_THROW(dist_S(0, 4), DomainError);
  EXPECT_THROW(dist_S(2, 0), DomainError);
}

TEST(DistSTest, MatchesEnumeration) {
  for (int n = 1; n <= 10; ++n) {
    for (int r = 1; r <= 4; ++r) {
      EXPECT_EQ(oracle::compare(oracle::enumerated_dist_S(r, n), dist_S(r, n)),
                "")
          << "r=" << r << " n=" << n;
    }
  }
}

TEST(DistSTest, SupportBounds) {
  for (int n : {5, 17, 40}) {
    for (int r = 1; r <= 5; ++r) {
      const ExactDist d = dist_S(r, n);
      for (const auto& [v, p] : d.atoms()) {
        EXPECT_GT(p, 0);
        EXPECT_GE(v, 0);
        EXPECT_LE(v, n >> (r - 1));
        EXPECT_EQ(v.get_den(), 1);
      }
    }
  }
}

TEST(DistSTest, MeanAndVarianceClosedForms) {
  for (int n = 2; n <= 200; ++n) {
    const Rational q(n);
    const ExactDist d = dist_S(2, n);
    EXPECT_EQ(d.mean(), q * (q - 1) / (2 * (2 * q - 3))) << n;
    EXPECT_EQ(d.variance(), q * (q - 1) * (q - 2) * (q - 3) /
                                (2 * (2 * q - 3) * (2 * q - 3) * (2 * q - 5)))
        << n;
  }
}

TEST(DistSTest, FloatBackendTracksExact) {
  for (int r = 2; r <= 4; ++r) {
    const int n = 120;
    const auto approx = dist_S_float(r, n);
    const ExactDist exact = dist_S(r, n);
    double total = 0;
    for (std::size_t j = 0; j < approx.size(); ++j) {
      total += approx[j];
      EXPECT_NEAR(approx[j], exact.probability(Q(j)).get_d(), 1e-13);
    }
    EXPECT_NEAR(total, 1.0, 1e-13);
  }
}

TEST(DistRatioTest, Examples) {
  EXPECT_EQ(dist_ratio(1, 1, 4),
            ExactDist::from_atoms({{Q(1, 4), Q(4, 5)}, {Q(1, 2), Q(1, 5)}}));
  EXPECT_EQ(oracle::compare(oracle::enumerated_dist_ratio(2, 1, 6),
                            dist_ratio(2, 1, 6)),
            "");
  EXPECT_EQ(dist_ratio(1, 1, 2), ExactDist::point_mass(Q(1, 2)));
  EXPECT_THROW(dist_ratio(1, 1, 1), DomainError);
  EXPECT_THROW(dist_ratio(0, 1, 4), DomainError);
  EXPECT_THROW(dist_ratio(1, 0, 4), DomainError);
}

TEST(DistRatioTest, MatchesEnumeration) {
  for (int n = 2; n <= 10; ++n) {
    for (int q = 1; q <= 3; ++q) {
      for (int r = 1; q + r <= 4; ++r) {
        EXPECT_EQ(oracle::compare(oracle::enumerated_dist_ratio(q, r, n),
                                  dist_ratio(q, r, n)),
                  "")
            << "q=" << q << " r=" << r << " n=" << n;
      }
    }
  }
}

TEST(DistRatioTest, MeanOfFirstRatio) {
  for (int n = 2; n <= 50; ++n) {
    const Rational q(n);
    EXPECT_EQ(dist_ratio(1, 1, n).mean(), (q - 1) / (2 * (2 * q - 3))) << n;
  }
}

TEST(DistRatioTest, SupportBounds) {
  for (int q = 1; q <= 3; ++q) {
    for (int r = 1; r <= 3; ++r) {
      const Rational cap = pow(Rational(2), -r);
      const ExactDist d = dist_ratio(q, r, 40);
      for (const auto& [v, p] : d.atoms()) {
        EXPECT_GE(v, 0);
        EXPECT_LE(v, cap) << "q=" << q << " r=" << r << " v=" << to_string(v);
      }
    }
  }
}

TEST(DistRatioTest, FloatBackendTracksExact) {
  const ExactDist exact = dist_ratio(2, 1, 60);
  const auto approx = dist_ratio_float(2, 1, 60);
  ASSERT_EQ(approx.size(), exact.size());
  for (const auto& [v, p] : approx) {
    EXPECT_NEAR(p, exact.probability(v.to_rational()).get_d(), 1e-13);
  }
}

TEST(ExpectTest, Polynomials) {
  const ExactDist d = dist_S(2, 4);
  EXPECT_EQ(expect(d, Polynomial{{Q(0), Q(1)}}), Q(6, 5));
  EXPECT_EQ(expect(d, Polynomial{{Q(0), Q(0), Q(1)}}), Q(8, 5));
  EXPECT_EQ(expect(d, Polynomial{{Q(1)}}), 1);
  EXPECT_EQ(expect(dist_S(3, 9), Polynomial{{Q(1)}}), 1);
  EXPECT_EQ(expect(d, Polynomial{}), 0);
}

TEST(ExpectTest, Powers) {
  const ExactDist d = dist_S(2, 4);
  EXPECT_EQ(expect(d, Power{-1}), Q(9, 10));
  EXPECT_EQ(expect(d, Power{2}), Q(8, 5));
  EXPECT_EQ(expect(d, Power{0}), 1);
  EXPECT_THROW(expect(dist_S(3, 4), Power{-1}), DomainError);
}

TEST(JsonTest, Layout) {
  EXPECT_EQ(to_json(dist_S(2, 4)),
            "{\"support\":[{\"num\":1,\"den\":1,\"p_num\":4,\"p_den\":5},"
            "{\"num\":2,\"den\":1,\"p_num\":1,\"p_den\":5}]}");
}

}  // namespace
}  // namespace strahler
