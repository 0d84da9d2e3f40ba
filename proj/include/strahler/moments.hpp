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

// Exact moments of S_{2,n} and numeric checks of the asymptotic moment
// forms for branch counts and bifurcation ratios.

#ifndef STRAHLER_MOMENTS_HPP_
#define STRAHLER_MOMENTS_HPP_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "strahler/rational.hpp"
#include "strahler/recursion.hpp"

namespace strahler {

enum class MomentKind { kRaw, kCentral, kNegative, kMixed };

std::string to_string(MomentKind kind);
MomentKind parse_moment_kind(const std::string& name);

// Memoized exact moments of S_{2,n}:
//   raw       <S^k>
//   central   <(S - n/4)^k>
//   negative  <S^{-k}>
//   mixed(l)  <S^l (S - n/4)^k>
// Raw moments come from the bottom-up recursion
//   <S_n^{k+1}> = (n/2) <S_n^k> - n(n-2)/(2(2n-3)) <S_{n-1}^k>,
// seeded with <S_1^0> = 1 and <S_1^k> = 0 (the single leaf has S_2 = 0).
// Negative and mixed moments are sums against the exact law of S_{2,n}.
class MomentTable {
 public:
  Rational raw(int k, int n);
  Rational central(int k, int n);
  Rational negative(int k, int n);
  Rational mixed(int l, int k, int n);
  Rational get(MomentKind kind, int k, int l, int n);

 private:
  void extend_raw(int k, int n);

  std::vector<std::vector<Rational>> raw_;  // raw_[k][n], n >= 1
  std::map<std::tuple<MomentKind, int, int, int>, Rational> memo_;
};

Rational raw_moment_s2(int k, int n);
Rational central_moment_s2(int k, int n);
Rational negative_moment_s2(int k, int n);
Rational mixed_moment_s2(int l, int k, int n);

// LHS - RHS of
//   <S_n^{-(k+1)}> = <S_n^{-k}> - ((n-2)/2) <S_n^{-(k+1)}>
//                    + n(n-2)/(2(2n-3)) <S_{n-1}^{-(k+1)}>,
// which holds exactly for n >= 3.
Rational check_prop2_recurrence(int k, int n);

// Same moments from the float kernel.
double moment_float(MomentKind kind, int k, int l, int n);

// Variant of an odd-power constant that is reported but not asserted.
enum class OddForm {
  kStated,
  // Count-deviation odd constant with (4^{r-2}-1)/3 in place of
  // (4^{r-1}-1)/3.
  kProofVariant,
  // Ratio-deviation odd constant: the q = 1 count-deviation constant divided
  // by n^{2s+1}, scaled by 4^{(s+1)(q-1)}.
  kRescaled,
};

struct AsymptoticTarget {
  enum class Kind { kLemma3, kProp2, kLemma4, kLemma1, kLemma2, kLemma5 };

  Kind kind = Kind::kLemma3;
  int k = 0;
  int l = 0;  // lemma4 only
  int q = 1;  // lemma5 only
  int r = 1;  // lemma1, lemma2 and lemma5
  OddForm odd_form = OddForm::kStated;

  static AsymptoticTarget lemma3(int k) { return {Kind::kLemma3, k}; }
  static AsymptoticTarget prop2(int k) { return {Kind::kProp2, k}; }
  static AsymptoticTarget lemma4(int l, int k) {
    return {Kind::kLemma4, k, l};
  }
  static AsymptoticTarget lemma1(int r, int k) {
    return {Kind::kLemma1, k, 0, 1, r};
  }
  static AsymptoticTarget lemma2(int r, int k,
                                 OddForm form = OddForm::kStated) {
    return {Kind::kLemma2, k, 0, 1, r, form};
  }
  static AsymptoticTarget lemma5(int q, int r, int k,
                                 OddForm form = OddForm::kStated) {
    return {Kind::kLemma5, k, 0, q, r, form};
  }

  std::string description() const;
};

// Exact moment the target describes, at magnitude n.
template <class T>
T asymptotic_moment(const AsymptoticTarget& target, int n);
extern template Rational asymptotic_moment<Rational>(const AsymptoticTarget&,
                                                     int);
extern template double asymptotic_moment<double>(const AsymptoticTarget&, int);

// Predicted leading form. Throws DomainError when it is identically zero.
Rational predicted_form(const AsymptoticTarget& target, int n);

struct AsymptoticPoint {
  int n = 0;
  Backend backend = Backend::kExact;
  double value = 0;
  double predicted = 0;
  double ratio = 0;
  std::optional<Rational> exact_ratio;  // exact backend only
};

struct AsymptoticCheck {
  std::string target_description;
  std::vector<AsymptoticPoint> points;

  const AsymptoticPoint& last() const { return points.back(); }
  bool last_in_band(double lo, double hi) const;
  // |ratio - 1| does not grow (beyond slack) across the last three points.
  bool monotone_tail(double slack) const;
};

enum class BackendChoice { kExact, kFloat, kAuto };

// kAuto picks the exact backend while the kernel weights at n stay within
// exact_bit_threshold bits (they need about 2n bits), float beyond.
struct BackendPolicy {
  BackendChoice choice = BackendChoice::kAuto;
  std::size_t exact_bit_threshold = 1024;

  Backend backend_for(int n) const;
};

AsymptoticCheck asymptotic_check(const AsymptoticTarget& target,
                                 std::span<const int> n_grid,
                                 BackendPolicy policy = {});

}  // namespace strahler

#endif  // STRAHLER_MOMENTS_HPP_
