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


#include "benign/harness/sweep.hpp"

#include <fstream>
#include <mutex>
#include <optional>
#include <set>

#include "benign/errors.hpp"
#include "benign/parallel.hpp"

namespace benign::harness {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(std::string_view value) {
  std::vector<std::string> out;
  while (true) {
    const auto comma = value.find(',');
    const std::string_view item = trim(value.substr(0, comma));
    if (item.empty()) throw ContractError("grid: empty entry in list '" + std::string(value) + "'");
    out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    value = value.substr(comma + 1);
  }
  return out;
}

// Keys that name the same quantity two ways.
std::string_view partner(std::string_view key) {
  if (key == "alpha") return "d";
  if (key == "d") return "alpha";
  if (key == "s") return "kappa";
  if (key == "kappa") return "s";
  return {};
}

class OrderedCsvWriter {
 public:
  OrderedCsvWriter(std::ofstream& out, std::size_t cells) : out_(out), pending_(cells) {}

  void submit(std::size_t cell, std::vector<ResultRow> rows, SweepSummary& summary) {
    std::lock_guard<std::mutex> lock(mutex_);
    pending_[cell] = std::move(rows);
    while (next_ < pending_.size() && pending_[next_]) {
      std::string block;
      for (const ResultRow& r : *pending_[next_]) {
        if (r.failed) {
          summary.failures.push_back({r.cell, r.replicate, r.error});
        } else {
          block += csv_row(r);
          block += '\n';
          ++summary.rows_written;
        }
      }
      out_ << block;
      out_.flush();
      if (!out_) throw IoError("write failed while emitting cell " + std::to_string(next_));
      pending_[next_].reset();
      ++next_;
    }
  }

 private:
  std::ofstream& out_;
  std::mutex mutex_;
  std::vector<std::optional<std::vector<ResultRow>>> pending_;
  std::size_t next_ = 0;
};

}  // namespace

std::size_t SweepGrid::cell_count() const {
  std::size_t count = 1;
  for (const SweepAxis& a : axes) {
    if (a.values.empty()) return 0;
    if (count > max_cells) break;
    count *= a.values.size();
  }
  return count;
}

ExperimentConfig SweepGrid::cell(std::size_t index) const {
  require(index < cell_count(), "grid: cell index out of range");
  ExperimentConfig cfg = base;
  std::vector<std::size_t> digits(axes.size());
  for (std::size_t a = axes.size(); a-- > 0;) {
    digits[a] = index % axes[a].values.size();
    index /= axes[a].values.size();
  }
  for (std::size_t a = 0; a < axes.size(); ++a) cfg.set(axes[a].key, axes[a].values[digits[a]]);
  return cfg;
}

void SweepGrid::validate() const {
  const std::size_t count = cell_count();
  require(count >= 1, "grid: no cells");
  require(count <= max_cells, "grid: " + std::to_string(count) + "+ cells exceed the cap of " +
                                  std::to_string(max_cells));
  for (std::size_t i = 0; i < count; ++i) {
    try {
      cell(i).validate();
    } catch (const ContractError& e) {
      throw ContractError("grid cell " + std::to_string(i) + ": " + e.what());
    }
  }
}

void SweepGrid::override_key(std::string_view key, std::string_view value) {
  base.set(key, value);
  const std::string_view other = partner(key);
  std::erase_if(axes, [&](const SweepAxis& a) { return a.key == key || a.key == other; });
}

SweepGrid parse_grid(std::string_view text, std::size_t max_cells) {
  SweepGrid grid;
  grid.max_cells = max_cells;
  std::set<std::string> present;
  for (const auto& [key, value] : parse_key_values(text)) {
    present.insert(key);
    if (value.find(',') != std::string::npos) {
      SweepAxis axis{key, split_list(value)};
      ExperimentConfig probe;
      for (const auto& v : axis.values) probe.set(key, v);  // type-checks every entry
      grid.axes.push_back(std::move(axis));
    } else {
      grid.base.set(key, value);
    }
  }
  if (!present.count("n")) throw ContractError("grid: field 'n' is required");
  if (present.count("alpha") && present.count("d"))
    throw ContractError("grid: give either 'alpha' or 'd', not both");
  if (present.count("s") && present.count("kappa"))
    throw ContractError("grid: give either 's' or 'kappa', not both");
  grid.validate();
  return grid;
}

SweepGrid load_grid(const std::string& path, std::size_t max_cells) {
  return parse_grid(read_file(path), max_cells);
}

std::vector<ResultRow> run_grid(const SweepGrid& grid, std::size_t workers,
                                const RunOptions& options) {
  grid.validate();
  const std::size_t cells = grid.cell_count();
  std::vector<std::vector<ResultRow>> per_cell(cells);
  parallel_for(cells, workers,
               [&](std::size_t c) { per_cell[c] = run_experiment(grid.cell(c), c, options); });
  std::vector<ResultRow> rows;
  for (auto& block : per_cell)
    for (auto& r : block) rows.push_back(std::move(r));
  return rows;
}

SweepSummary run_sweep(const SweepGrid& grid, const std::string& output_path,
                       std::size_t workers, const RunOptions& options) {
  grid.validate();
  std::ofstream out(output_path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + output_path + "' for writing");
  const std::string columns_path = output_path + ".columns.txt";
  std::ofstream columns(columns_path, std::ios::binary | std::ios::trunc);
  if (!columns) throw IoError("cannot open '" + columns_path + "' for writing");
  columns << columns_description();
  columns.close();
  if (!columns) throw IoError("write failed on '" + columns_path + "'");

  out << csv_header() << '\n';
  out.flush();
  if (!out) throw IoError("write failed on '" + output_path + "'");

  SweepSummary summary;
  summary.cells = grid.cell_count();
  OrderedCsvWriter writer(out, summary.cells);
  parallel_for(summary.cells, workers, [&](std::size_t c) {
    writer.submit(c, run_experiment(grid.cell(c), c, options), summary);
  });
  out.close();
  if (!out) throw IoError("write failed on '" + output_path + "'");
  return summary;
}

}  // namespace benign::harness
