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


// One experiment = one configuration run for `replicates` independent
// replicates of the full pipeline.

#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "benign/harness/config.hpp"

namespace benign::harness {

struct ResultRow {
  std::size_t cell = 0;
  std::size_t replicate = 0;
  ExperimentConfig config;

  std::optional<std::size_t> kstar;
  std::size_t kstar_analytic = 0;
  bool cond4_holds = false;
  double bias = 0.0;         // B_R
  double variance = 0.0;     // V_R
  double excess_risk = 0.0;  // R = B_R + V_R
  double mc_risk = 0.0;      // NaN when m_eps = 0
  double mc_stderr = 0.0;
  double variance_mc = 0.0;  // not written to CSV
  double variance_mc_stderr = 0.0;
  double v_upper_ref = 0.0;
  double v_lower_ref = 0.0;
  double b_upper_ref = 0.0;
  std::size_t numerical_rank = 0;
  double runtime_ms = 0.0;

  bool failed = false;
  std::string error;
};

struct RunOptions {
  /// Record wall-clock runtime. Off by default so that CSV output is a pure
  /// function of (config, seed).
  bool timing = false;
  /// Tolerance on the null-space projector defect; larger marks the row failed.
  double projector_tol = 1e-8;
};

/// Validates the config, then runs every replicate. Replicate r of cell c
/// draws from derive_stream(master_seed, c, r). A NumericalError inside a
/// replicate marks that row failed; the others still run.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config, std::size_t cell_index = 0,
                                      const RunOptions& options = {});

/// Fixed CSV schema.
const std::vector<std::string>& csv_columns();
std::string csv_header();
std::string csv_row(const ResultRow& row);

/// One line per column: name and meaning.
std::string columns_description();

/// Header plus every non-failed row.
void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);

}  // namespace benign::harness
