// Copyright 2026 The benign-rf Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// The acceptance suite: twelve end-to-end checks with pinned tolerances.
// Criteria that share a computation (2 with 3, 4 with 5) are run together.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace benign::acceptance {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double time_limit = 0.0;
};

struct Options {
  std::size_t workers = 1;
  std::uint64_t seed = 2026;
};

/// 1..12.
std::vector<int> all_ids();

/// Runs the requested criteria (any order, duplicates ignored) and returns
/// them sorted by id. Unknown ids are ContractErrors.
std::vector<CriterionResult> run(const std::vector<int>& ids, const Options& options);

/// "criterion  4 FAIL  title: detail [12.3 s / 900 s]"
std::string format_line(const CriterionResult& result);

}  // namespace benign::acceptance
