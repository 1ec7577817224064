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


// Experiment configuration: a flat "key = value" text format whose keys are
// exactly the ExperimentConfig field names. '#' starts a comment.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "benign/interpolator.hpp"
#include "benign/synth.hpp"

namespace benign::harness {

struct ExperimentConfig {
  std::size_t n = 0;
  std::optional<double> alpha;       // d = ceil(n^alpha); exclusive with d
  std::optional<std::size_t> d;
  std::optional<std::size_t> s;
  std::optional<double> kappa;       // s = ceil(n^kappa); exclusive with s
  double gamma = 2.0;
  double zeta = 1.0;
  double sigma0_sq = 1.0;
  synth::SpectrumKind spectrum_kind = synth::SpectrumKind::polynomial;
  std::size_t rank = 1;              // finite_rank spectra only
  synth::CovariateDist covariate_dist = synth::CovariateDist::gaussian;
  synth::LabelSource labels_from = synth::LabelSource::noisy;
  interp::TargetConstruction target = interp::TargetConstruction::unit_random;
  std::size_t m_test = 2000;
  std::size_t m_eps = 50;            // 0 skips the Monte-Carlo refits
  std::size_t replicates = 1;
  std::uint64_t master_seed = 0;
  std::optional<double> pinv_rel_tol;  // default 1e-12 * max(n, s)
  double b = 4.0;
  double delta = 0.05;

  std::size_t resolved_d() const;
  std::size_t resolved_s() const;
  double resolved_rel_tol() const;
  synth::DataModel data_model() const;
  synth::SpectrumSpec spectrum() const;

  /// Throws ContractError naming the offending field.
  void validate() const;

  /// Assigns one field from its text form. Setting alpha clears d and vice
  /// versa; likewise for s and kappa.
  void set(std::string_view key, std::string_view value);
};

/// Every accepted key, in canonical order.
const std::vector<std::string>& config_keys();

/// (key, value) pairs of a key = value document, in order of appearance.
/// Duplicate or unknown keys and malformed lines are ContractErrors carrying
/// the line number.
std::vector<std::pair<std::string, std::string>> parse_key_values(std::string_view text);

/// Parses and validates. Specifying both alpha and d (or s and kappa) is an
/// error; the required keys are n, one of alpha/d, and one of s/kappa.
ExperimentConfig parse_config(std::string_view text);

/// Reads a file; IoError if it cannot be opened.
std::string read_file(const std::string& path);

ExperimentConfig load_config(const std::string& path);

}  // namespace benign::harness
