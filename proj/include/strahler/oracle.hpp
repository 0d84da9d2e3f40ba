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

// Brute-force laws obtained by enumerating every tree with n leaves and
// ordering it directly. Shares nothing with the kernel recursions, so it
// serves as their reference for small n.

#ifndef STRAHLER_ORACLE_HPP_
#define STRAHLER_ORACLE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "strahler/exact.hpp"

namespace strahler::oracle {

// Branch counts of every tree in enumeration order (memoized per thread).
const std::vector<std::vector<std::uint64_t>>& enumerated_counts(int n);

ExactDist enumerated_dist_S(int r, int n);
ExactDist enumerated_dist_ratio(int q, int r, int n);

// Empty when equal, otherwise a description of the first differing atom.
std::string compare(const ExactDist& expected, const ExactDist& actual);

}  // namespace strahler::oracle

#endif  // STRAHLER_ORACLE_HPP_
