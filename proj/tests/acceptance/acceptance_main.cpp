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


// Acceptance runner. With no arguments, runs every criterion; otherwise only
// the ids given (e.g. "acceptance 4 5"). Exit status 3 if any criterion fails.

#include <cstdio>
#include <exception>
#include <vector>

#include "CLI11.hpp"
#include "benign/acceptance.hpp"
#include "benign/parallel.hpp"

int main(int argc, char** argv) {
  CLI::App app{"benign-rf acceptance suite"};
  std::vector<int> ids;
  benign::acceptance::Options opt;
  opt.workers = benign::default_workers();
  app.add_option("criteria", ids, "criterion ids (default: all)")->check(CLI::Range(1, 12));
  app.add_option("--workers", opt.workers, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", opt.seed, "master seed");
  CLI11_PARSE(app, argc, argv);
  if (ids.empty()) ids = benign::acceptance::all_ids();

  try {
    bool all = true;
    for (const auto& r : benign::acceptance::run(ids, opt)) {
      std::printf("%s\n", benign::acceptance::format_line(r).c_str());
      all = all && r.passed;
    }
    return all ? 0 : 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance: %s\n", e.what());
    return 1;
  }
}
