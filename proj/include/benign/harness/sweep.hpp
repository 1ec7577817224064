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


// Parameter sweeps. A grid file uses the config format; a value holding
// commas ("s = 50, 100, 200") turns that key into an axis. Cells are the
// cartesian product of the axes in file order, last axis fastest.

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "benign/harness/config.hpp"
#include "benign/harness/experiment.hpp"

namespace benign::harness {

struct SweepAxis {
  std::string key;
  std::vector<std::string> values;
};

struct SweepGrid {
  ExperimentConfig base;
  std::vector<SweepAxis> axes;
  std::size_t max_cells = 10000;

  std::size_t cell_count() const;
  /// Config of cell i. Throws ContractError if out of range.
  ExperimentConfig cell(std::size_t index) const;
  /// Validates the cap and every cell.
  void validate() const;
  /// Sets key on the base and drops any axis over it (used by CLI overrides).
  void override_key(std::string_view key, std::string_view value);
};

SweepGrid parse_grid(std::string_view text, std::size_t max_cells = 10000);
SweepGrid load_grid(const std::string& path, std::size_t max_cells = 10000);

struct SweepFailure {
  std::size_t cell = 0;
  std::size_t replicate = 0;
  std::string error;
};

struct SweepSummary {
  std::size_t cells = 0;
  std::size_t rows_written = 0;
  std::vector<SweepFailure> failures;
};

/// All rows of all cells, ordered by (cell, replicate), computed on `workers`
/// threads. Failed rows are included and flagged.
std::vector<ResultRow> run_grid(const SweepGrid& grid, std::size_t workers,
                                const RunOptions& options = {});

/// Writes the CSV to output_path and the column description to
/// output_path + ".columns.txt". Both files are opened before any cell runs;
/// an unwritable path is an IoError. Rows are written cell by cell in cell
/// order, whatever order the workers finish in.
SweepSummary run_sweep(const SweepGrid& grid, const std::string& output_path,
                       std::size_t workers, const RunOptions& options = {});

}  // namespace benign::harness
