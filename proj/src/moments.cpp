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

#include "strahler/moments.hpp"

#include <cmath>

#include "strahler/errors.hpp"

namespace strahler {

namespace {

template <class T>
T ipow(const T& base, int k) {
  T out(1);
  for (int i = 0; i < k; ++i) out *= base;
  return out;
}

template <class T>
T from_rational(const Rational& q) {
  if constexpr (std::is_same_v<T, double>) {
    return q.get_d();
  } else {
    return q;
  }
}

// sum_m P(S_2 = m) g(m) over the kernel at n.
template <class T, class G>
T kernel_sum(int n, G g) {
  const auto& w = kernel_weights<T>(n);
  Accumulator<T> acc;
  for (int m = 1; m <= n / 2; ++m) acc.add(w[m] * g(m));
  return acc.value();
}

template <class T>
T central_sum(int l, int k, int n) {
  const T center = from_rational<T>(make_rational(n, 4));
  return kernel_sum<T>(n, [&](int m) -> T {
    const T v = detail::scalar_from<T>(m);
    return ipow(v, l) * ipow(T(v - center), k);
  });
}

template <class T>
T negative_sum(int k, int n) {
  return kernel_sum<T>(n, [&](int m) -> T {
    return T(1) / ipow(detail::scalar_from<T>(m), k);
  });
}

void require_index(int k, const char* what) {
  if (k < 0) throw DomainError(std::string(what) + " must be non-negative");
}

Rational double_factorial_q(int s) { return Rational(double_factorial_odd(s)); }

// (1/5) ((4^{r+1}-1)/3 + c (4 (2s+1))) with c = (4^{lower}-1)/3.
Rational odd_bracket(int r, int s, int lower) {
  const Rational a = (pow4(r + 1) - 1) / 3;
  const Rational c = (pow4(lower) - 1) / 3;
  return (a + c * 4 * (2 * s + 1)) / 5;
}

}  // namespace

std::string to_string(MomentKind kind) {
  switch (kind) {
    case MomentKind::kRaw:
      return "raw";
    case MomentKind::kCentral:
      return "central";
    case MomentKind::kNegative:
      return "negative";
    case MomentKind::kMixed:
      return "mixed";
  }
  return "?";
}

MomentKind parse_moment_kind(const std::string& name) {
  if (name == "raw") return MomentKind::kRaw;
  if (name == "central") return MomentKind::kCentral;
  if (name == "negative") return MomentKind::kNegative;
  if (name == "mixed") return MomentKind::kMixed;
  throw DomainError("unknown moment kind '" + name + "'");
}

void MomentTable::extend_raw(int k, int n) {
  if (static_cast<int>(raw_.size()) <= k) raw_.resize(k + 1);
  for (int row = 0; row <= k; ++row) {
    auto& v = raw_[row];
    if (v.empty()) {
      v.push_back(Rational(0));  // n = 0 unused
      v.push_back(row == 0 ? Rational(1) : Rational(0));
    }
    for (int m = static_cast<int>(v.size()); m <= n; ++m) {
      if (row == 0) {
        v.push_back(Rational(1));
        continue;
      }
      const auto& prev = raw_[row - 1];
      const Rational half_m = make_rational(m, 2);
      const Rational c = make_rational(static_cast<std::int64_t>(m) * (m - 2),
                                       2 * (2 * static_cast<std::int64_t>(m) - 3));
      v.push_back(half_m * prev[m] - c * prev[m - 1]);
    }
  }
}

Rational MomentTable::raw(int k, int n) {
  require_index(k, "moment order");
  if (n < 1) throw DomainError("magnitude must be positive");
  extend_raw(k, n);
  return raw_[k][n];
}

Rational MomentTable::central(int k, int n) {
  require_index(k, "moment order");
  if (n < 1) throw DomainError("magnitude must be positive");
  const auto key = std::make_tuple(MomentKind::kCentral, k, 0, n);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  const Rational shift = make_rational(-n, 4);
  Rational sum(0);
  for (int i = 0; i <= k; ++i) {
    sum += Rational(binomial(k, i)) * raw(i, n) * pow(shift, k - i);
  }
  return memo_.emplace(key, sum).first->second;
}

Rational MomentTable::negative(int k, int n) {
  require_index(k, "moment order");
  if (n < 2) throw DomainError("negative moments need n >= 2");
  const auto key = std::make_tuple(MomentKind::kNegative, k, 0, n);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  return memo_.emplace(key, negative_sum<Rational>(k, n)).first->second;
}

Rational MomentTable::mixed(int l, int k, int n) {
  require_index(k, "moment order");
  require_index(l, "mixed power");
  if (n < 2) throw DomainError("mixed moments need n >= 2");
  const auto key = std::make_tuple(MomentKind::kMixed, k, l, n);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  return memo_.emplace(key, central_sum<Rational>(l, k, n)).first->second;
}

Rational MomentTable::get(MomentKind kind, int k, int l, int n) {
  switch (kind) {
    case MomentKind::kRaw:
      return raw(k, n);
    case MomentKind::kCentral:
      return central(k, n);
    case MomentKind::kNegative:
      return negative(k, n);
    case MomentKind::kMixed:
      return mixed(l, k, n);
  }
  throw DomainError("unknown moment kind");
}

namespace {

MomentTable& shared_table() {
  thread_local MomentTable table;
  return table;
}

}  // namespace

Rational raw_moment_s2(int k, int n) { return shared_table().raw(k, n); }
Rational central_moment_s2(int k, int n) {
  return shared_table().central(k, n);
}
Rational negative_moment_s2(int k, int n) {
  return shared_table().negative(k, n);
}
Rational mixed_moment_s2(int l, int k, int n) {
  return shared_table().mixed(l, k, n);
}

Rational check_prop2_recurrence(int k, int n) {
  require_index(k, "moment order");
  if (n < 3) throw DomainError("the recurrence needs n >= 3");
  const Rational lhs = negative_moment_s2(k + 1, n);
  const Rational c = make_rational(static_cast<std::int64_t>(n) * (n - 2),
                                   2 * (2 * static_cast<std::int64_t>(n) - 3));
  const Rational rhs = negative_moment_s2(k, n) -
                       make_rational(n - 2, 2) * negative_moment_s2(k + 1, n) +
                       c * negative_moment_s2(k + 1, n - 1);
  return lhs - rhs;
}

double moment_float(MomentKind kind, int k, int l, int n) {
  require_index(k, "moment order");
  if (n < 2) throw DomainError("float moments need n >= 2");
  switch (kind) {
    case MomentKind::kRaw:
      return kernel_sum<double>(n, [&](int m) { return ipow<double>(m, k); });
    case MomentKind::kCentral:
      return central_sum<double>(0, k, n);
    case MomentKind::kNegative:
      return negative_sum<double>(k, n);
    case MomentKind::kMixed:
      require_index(l, "mixed power");
      return central_sum<double>(l, k, n);
  }
  throw DomainError("unknown moment kind");
}

std::string AsymptoticTarget::description() const {
  const std::string ks = "k=" + std::to_string(k);
  switch (kind) {
    case Kind::kLemma3:
      return "lemma3(" + ks + ") <(S_2-n/4)^k>";
    case Kind::kProp2:
      return "prop2(" + ks + ") <S_2^-k>";
    case Kind::kLemma4:
      return "lemma4(l=" + std::to_string(l) + "," + ks +
             ") <S_2^l (S_2-n/4)^k>";
    case Kind::kLemma1:
      return "lemma1(r=" + std::to_string(r) + "," + ks +
             ") <(S_{r+1}/S_r-1/4)^k>";
    case Kind::kLemma2: {
      std::string d = "lemma2(r=" + std::to_string(r) + "," + ks +
                      ") <(S_{r+1}-n/4^r)^k>";
      if (odd_form == OddForm::kProofVariant) d += " [alternate odd constant]";
      return d;
    }
    case Kind::kLemma5: {
      std::string d = "lemma5(q=" + std::to_string(q) +
                      ",r=" + std::to_string(r) + "," + ks +
                      ") <(S_{q+r}/S_q-4^-r)^k>";
      if (odd_form == OddForm::kRescaled) d += " [rescaled odd form]";
      return d;
    }
  }
  return "?";
}

template <class T>
T asymptotic_moment(const AsymptoticTarget& t, int n) {
  require_index(t.k, "moment order");
  if (n < 2) throw DomainError("asymptotic checks need n >= 2");
  using Kind = AsymptoticTarget::Kind;
  switch (t.kind) {
    case Kind::kLemma3:
      return central_sum<T>(0, t.k, n);
    case Kind::kProp2:
      return negative_sum<T>(t.k, n);
    case Kind::kLemma4:
      require_index(t.l, "mixed power");
      return central_sum<T>(t.l, t.k, n);
    case Kind::kLemma1: {
      const T quarter = from_rational<T>(make_rational(1, 4));
      return expect_ratio<T>(t.r, 1, n, [&](const T& x) -> T {
        return ipow(T(x - quarter), t.k);
      });
    }
    case Kind::kLemma2: {
      const T center = from_rational<T>(Rational(n) * pow4(-t.r));
      return expect_count<T>(t.r + 1, n, [&](std::int64_t j) -> T {
        return ipow(T(detail::scalar_from<T>(j) - center), t.k);
      });
    }
    case Kind::kLemma5: {
      const T center = from_rational<T>(pow4(-t.r));
      return expect_ratio<T>(t.q, t.r, n, [&](const T& x) -> T {
        return ipow(T(x - center), t.k);
      });
    }
  }
  throw DomainError("unknown asymptotic target");
}

template Rational asymptotic_moment<Rational>(const AsymptoticTarget&, int);
template double asymptotic_moment<double>(const AsymptoticTarget&, int);

Rational predicted_form(const AsymptoticTarget& t, int n) {
  require_index(t.k, "moment order");
  if (n < 1) throw DomainError("magnitude must be positive");
  using Kind = AsymptoticTarget::Kind;
  const int s = t.k / 2;
  const bool even = t.k % 2 == 0;
  const Rational nq(n);
  // (2s-1)!!/4^{2s} for even k, (2s+1)!!/(2 4^{2s+1}) for odd k.
  const Rational base = even
                            ? Rational(double_factorial_q(s) * pow4(-2 * s))
                            : Rational(double_factorial_q(s + 1) *
                                       pow4(-(2 * s + 1)) / 2);
  Rational out;
  switch (t.kind) {
    case Kind::kLemma3:
      out = base * pow(nq, s);
      break;
    case Kind::kProp2:
      out = pow(nq / 4, -t.k);
      break;
    case Kind::kLemma4:
      out = pow(nq / 4, t.l) * base * pow(nq, s);
      if (!even) out *= 2 * t.l + 1;
      break;
    case Kind::kLemma1: {
      const Rational scale = nq * pow4(-(t.r - 1));
      out = base * pow(scale, even ? -s : -s - 1);
      break;
    }
    case Kind::kLemma2: {
      const Rational a = (pow4(t.r) - 1) / 3;
      if (even) {
        out = double_factorial_q(s) * pow4(-2 * s * t.r) * pow(a, s) *
              pow(nq, s);
      } else {
        const int lower = t.odd_form == OddForm::kProofVariant ? t.r - 2
                                                               : t.r - 1;
        out = double_factorial_q(s + 1) * pow4(-(2 * s + 1) * t.r) / 2 *
              pow(a, s) * odd_bracket(t.r, s, lower) * pow(nq, s);
      }
      break;
    }
    case Kind::kLemma5: {
      const Rational a = (pow4(t.r) - 1) / 3;
      if (even) {
        out = pow4(s * (t.q - 1)) * double_factorial_q(s) *
              pow4(-2 * s * t.r) * pow(a, s) * pow(nq, -s);
      } else if (t.odd_form == OddForm::kRescaled) {
        out = pow4((s + 1) * (t.q - 1)) * double_factorial_q(s + 1) *
              pow4(-(2 * s + 1) * t.r) / 2 * pow(a, s) *
              odd_bracket(t.r, s, t.r - 1) * pow(nq, -s - 1);
      } else {
        out = pow4(s * (t.q - 1)) * double_factorial_q(s + 1) *
              pow4(-(2 * s + 1) * t.r) * pow(a, s) *
              odd_bracket(t.r, s, t.r - 1) * pow(nq, -s);
      }
      break;
    }
  }
  if (out == 0) {
    throw DomainError("predicted form of " + t.description() +
                      " is identically zero");
  }
  return out;
}

Backend BackendPolicy::backend_for(int n) const {
  switch (choice) {
    case BackendChoice::kExact:
      return Backend::kExact;
    case BackendChoice::kFloat:
      return Backend::kFloat;
    case BackendChoice::kAuto:
      break;
  }
  return 2 * static_cast<std::size_t>(n) <= exact_bit_threshold
             ? Backend::kExact
             : Backend::kFloat;
}

bool AsymptoticCheck::last_in_band(double lo, double hi) const {
  if (points.empty()) return false;
  const double r = last().ratio;
  return std::isfinite(r) && r >= lo && r <= hi;
}

bool AsymptoticCheck::monotone_tail(double slack) const {
  if (points.size() < 3) return false;
  const std::size_t start = points.size() - 3;
  for (std::size_t i = start; i + 1 < points.size(); ++i) {
    const double before = std::abs(points[i].ratio - 1.0);
    const double after = std::abs(points[i + 1].ratio - 1.0);
    if (after > before + slack) return false;
  }
  return true;
}

AsymptoticCheck asymptotic_check(const AsymptoticTarget& target,
                                 std::span<const int> n_grid,
                                 BackendPolicy policy) {
  AsymptoticCheck check;
  check.target_description = target.description();
  int previous = 0;
  for (int n : n_grid) {
    if (n <= previous) throw DomainError("n_grid must be increasing");
    previous = n;
    const Rational predicted = predicted_form(target, n);
    AsymptoticPoint p;
    p.n = n;
    p.backend = policy.backend_for(n);
    p.predicted = predicted.get_d();
    if (p.backend == Backend::kExact) {
      const Rational value = asymptotic_moment<Rational>(target, n);
      const Rational ratio = value / predicted;
      p.value = value.get_d();
      p.ratio = ratio.get_d();
      p.exact_ratio = ratio;
    } else {
      p.value = asymptotic_moment<double>(target, n);
      p.ratio = p.value / p.predicted;
    }
    check.points.push_back(std::move(p));
  }
  return check;
}

}  // namespace strahler
