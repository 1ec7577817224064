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


// Named concentration experiments with default parameters, shared by the
// `conclab` subcommand and the acceptance suite.

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "benign/conc_lab.hpp"

namespace benign::harness {

using ConcParams = std::map<std::string, double>;

const std::vector<std::string>& conclab_lemmas();

/// Default parameters of a lemma; ContractError for an unknown id.
ConcParams conclab_defaults(const std::string& lemma);

/// Runs a lemma with `overrides` applied on top of its defaults. Unknown
/// parameter names are ContractErrors.
conc::ConcReport run_conclab(const std::string& lemma, const ConcParams& overrides,
                             std::uint64_t seed, std::size_t workers);

/// Header plus one row: the summary fields, then measured/expected/passed for
/// every named check.
std::string conclab_summary_csv(const conc::ConcReport& report);

/// trial,statistic,shape,bound for the validation batch.
std::string conclab_envelope_csv(const conc::ConcReport& report);

}  // namespace benign::harness
