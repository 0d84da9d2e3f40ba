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

#include "strahler/oracle.hpp"

#include <map>

#include "strahler/tree.hpp"

namespace strahler::oracle {

namespace {

Rational to_q(std::uint64_t v) { return Rational(BigInt(std::to_string(v))); }

std::uint64_t count_at(const std::vector<std::uint64_t>& c, int order) {
  return order >= 1 && static_cast<std::size_t>(order) <= c.size()
             ? c[order - 1]
             : 0;
}

ExactDist histogram(int n, auto value_of) {
  const auto& all = enumerated_counts(n);
  std::map<Rational, std::uint64_t> hits;
  for (const auto& c : all) ++hits[value_of(c)];
  ExactDist::Atoms atoms;
  const Rational total = to_q(all.size());
  for (const auto& [v, k] : hits) atoms.emplace(v, to_q(k) / total);
  return ExactDist::from_atoms(std::move(atoms));
}

}  // namespace

const std::vector<std::vector<std::uint64_t>>& enumerated_counts(int n) {
  thread_local std::map<int, std::vector<std::vector<std::uint64_t>>> memo;
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  std::vector<std::vector<std::uint64_t>> out;
  for (const Tree& t : enumerate_trees(n)) out.push_back(strahler(t).counts);
  return memo.emplace(n, std::move(out)).first->second;
}

ExactDist enumerated_dist_S(int r, int n) {
  return histogram(n, [r](const std::vector<std::uint64_t>& c) {
    return to_q(count_at(c, r));
  });
}

ExactDist enumerated_dist_ratio(int q, int r, int n) {
  return histogram(n, [q, r](const std::vector<std::uint64_t>& c) {
    const std::uint64_t below = count_at(c, q);
    if (below == 0) return Rational(0);
    Rational v = to_q(count_at(c, q + r)) / to_q(below);
    return v;
  });
}

std::string compare(const ExactDist& expected, const ExactDist& actual) {
  if (expected == actual) return {};
  for (const auto& [v, p] : expected.atoms()) {
    const Rational got = actual.probability(v);
    if (got != p) {
      return "P(" + to_string(v) + "): expected " + to_string(p) + ", got " +
             to_string(got);
    }
  }
  for (const auto& [v, p] : actual.atoms()) {
    if (expected.probability(v) == 0) {
      return "unexpected atom " + to_string(v) + " with probability " +
             to_string(p);
    }
  }
  return "distributions differ";
}

}  // namespace strahler::oracle
