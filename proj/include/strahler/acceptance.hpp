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

// The acceptance suite: eleven numbered criteria, each reported as one
// PASS/FAIL line. Shared by the `verify-all` subcommand and the acceptance
// test binary.

#ifndef STRAHLER_ACCEPTANCE_HPP_
#define STRAHLER_ACCEPTANCE_HPP_

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace strahler {

inline constexpr std::uint64_t kAcceptanceSeed = 20260417;

struct AcceptanceOptions {
  bool skip_mc = false;  // criteria 8 to 11 are reported as SKIP
  std::uint64_t seed = kAcceptanceSeed;
  unsigned workers = 0;  // 0 picks default_worker_count()
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  bool skipped = false;
  std::string detail;
  double seconds = 0;
};

struct AcceptanceReport {
  std::vector<CriterionResult> results;
  std::vector<std::string> notes;  // informational lines, never gating

  bool all_passed() const;
};

std::string format_line(const CriterionResult& result);

// Runs every criterion in order, streaming each line to `out` as it
// completes.
AcceptanceReport run_acceptance(const AcceptanceOptions& options,
                                std::ostream& out);

}  // namespace strahler

#endif  // STRAHLER_ACCEPTANCE_HPP_
