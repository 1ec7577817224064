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


#pragma once

#include <string>
#include <vector>

#include "benign/harness/config.hpp"
#include "benign/spectral.hpp"

namespace benign::harness {

struct Diagnostics {
  double trace_sigma = 0.0;
  double sigma_xi2 = 0.0;
  double alpha_used = 0.0;  // given, or log d / log n
  double kappa_used = 0.0;  // given, or log s / log n
  spectral::KstarResult kstar;
  spectral::RegimeLabel regime;
  double zeta_threshold = 0.0;  // 4 - 2/alpha
  spectral::BoundSheet sheet;
  std::vector<std::string> warnings;
  std::string text;  // "key: value" lines, stable order
};

Diagnostics diagnose(const ExperimentConfig& config);

}  // namespace benign::harness
