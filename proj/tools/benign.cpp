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


// Command-line front end.
//
//   benign run       --config cfg.txt [--out rows.csv]
//   benign sweep     --config grid.txt --out sweep.csv [--workers N]
//   benign diagnose  --config cfg.txt
//   benign conclab   eigen_bounds [--set t=8 --set trials=2000] [--out env.csv]
//   benign selftest  [criteria...]
//
// Exit codes: 0 ok, 1 config/contract error, 2 I/O error, 3 acceptance failure.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "benign/acceptance.hpp"
#include "benign/errors.hpp"
#include "benign/harness/conclab.hpp"
#include "benign/harness/config.hpp"
#include "benign/harness/diagnose.hpp"
#include "benign/harness/experiment.hpp"
#include "benign/harness/sweep.hpp"
#include "benign/parallel.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kContract = 1;
constexpr int kIo = 2;
constexpr int kAcceptance = 3;

struct Common {
  std::string config;
  std::string out;
  std::size_t workers = benign::default_workers();
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  bool timing = false;
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw benign::IoError("cannot open '" + path + "' for writing");
  f << text;
  f.close();
  if (!f) throw benign::IoError("write failed on '" + path + "'");
}

void apply_overrides(benign::harness::ExperimentConfig& cfg, const Common& c) {
  if (c.seed) cfg.master_seed = *c.seed;
  if (c.tol) cfg.pinv_rel_tol = *c.tol;
  cfg.validate();
}

int cmd_run(const Common& c) {
  auto cfg = benign::harness::load_config(c.config);
  apply_overrides(cfg, c);
  benign::harness::RunOptions opt;
  opt.timing = c.timing;
  // Open the destination before computing anything.
  std::ofstream file;
  if (!c.out.empty()) {
    file.open(c.out, std::ios::binary | std::ios::trunc);
    if (!file) throw benign::IoError("cannot open '" + c.out + "' for writing");
    write_text(c.out + ".columns.txt", benign::harness::columns_description());
  }
  const auto rows = benign::harness::run_experiment(cfg, 0, opt);
  std::ostream& out = c.out.empty() ? std::cout : file;
  benign::harness::write_csv(out, rows);
  out.flush();
  if (!out) throw benign::IoError("write failed on '" + (c.out.empty() ? "stdout" : c.out) + "'");
  for (const auto& r : rows)
    if (r.failed)
      std::fprintf(stderr, "replicate %zu failed: %s\n", r.replicate, r.error.c_str());
  return kOk;
}

int cmd_sweep(const Common& c) {
  auto grid = benign::harness::load_grid(c.config);
  if (c.seed) grid.override_key("master_seed", std::to_string(*c.seed));
  if (c.tol) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", *c.tol);
    grid.override_key("pinv_rel_tol", buf);
  }
  benign::harness::RunOptions opt;
  opt.timing = c.timing;
  const auto summary = benign::harness::run_sweep(grid, c.out, c.workers, opt);
  std::fprintf(stderr, "cells %zu, rows written %zu, failures %zu\n", summary.cells,
               summary.rows_written, summary.failures.size());
  for (const auto& f : summary.failures)
    std::fprintf(stderr, "  cell %zu replicate %zu: %s\n", f.cell, f.replicate, f.error.c_str());
  return kOk;
}

int cmd_diagnose(const Common& c) {
  auto cfg = benign::harness::load_config(c.config);
  apply_overrides(cfg, c);
  std::fputs(benign::harness::diagnose(cfg).text.c_str(), stdout);
  return kOk;
}

int cmd_conclab(const Common& c, const std::string& lemma, const std::vector<std::string>& sets) {
  benign::harness::ConcParams overrides;
  for (const auto& kv : sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw benign::ContractError("conclab: --set expects key=value, got '" + kv + "'");
    const std::string value = kv.substr(eq + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != value.size() || value.empty())
      throw benign::ContractError("conclab: '" + kv.substr(0, eq) + "' expects a number");
    overrides[kv.substr(0, eq)] = v;
  }
  std::ofstream env;
  if (!c.out.empty()) {
    env.open(c.out, std::ios::binary | std::ios::trunc);
    if (!env) throw benign::IoError("cannot open '" + c.out + "' for writing");
  }
  const auto rep = benign::harness::run_conclab(lemma, overrides, c.seed.value_or(0), c.workers);
  std::fputs(benign::harness::conclab_summary_csv(rep).c_str(), stdout);
  if (!c.out.empty()) {
    env << benign::harness::conclab_envelope_csv(rep);
    env.close();
    if (!env) throw benign::IoError("write failed on '" + c.out + "'");
  }
  return kOk;
}

int cmd_selftest(const Common& c, std::vector<int> ids) {
  benign::acceptance::Options opt;
  opt.workers = c.workers;
  if (c.seed) opt.seed = *c.seed;
  if (ids.empty()) ids = benign::acceptance::all_ids();
  bool all = true;
  for (const auto& r : benign::acceptance::run(ids, opt)) {
    std::printf("%s\n", benign::acceptance::format_line(r).c_str());
    std::fflush(stdout);
    all = all && r.passed;
  }
  return all ? kOk : kAcceptance;
}

void add_common(CLI::App* sub, Common& c, bool config, bool out, bool workers, bool tol) {
  if (config) sub->add_option("--config", c.config, "configuration file")->required();
  if (out) sub->add_option("--out", c.out, "output path");
  if (workers)
    sub->add_option("--workers", c.workers, "worker threads (default: hardware threads)")
        ->check(CLI::PositiveNumber);
  sub->add_option("--seed", c.seed, "override the master seed");
  if (tol) sub->add_option("--tol", c.tol, "override pinv_rel_tol");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MNLS random-ReLU-feature regression with noisy covariates"};
  app.require_subcommand(1);
  Common c;

  auto* run = app.add_subcommand("run", "run one configuration, CSV to stdout or --out");
  add_common(run, c, true, true, false, true);
  run->add_flag("--timing", c.timing, "record runtime_ms (output is then not reproducible)");

  auto* sweep = app.add_subcommand("sweep", "run a grid file, CSV to --out");
  add_common(sweep, c, true, false, true, true);
  sweep->add_option("--out", c.out, "output CSV")->required();
  sweep->add_flag("--timing", c.timing, "record runtime_ms (output is then not reproducible)");

  auto* diag = app.add_subcommand("diagnose", "spectral diagnostics of a configuration");
  add_common(diag, c, true, false, false, true);

  std::string lemma;
  std::vector<std::string> sets;
  auto* conclab = app.add_subcommand("conclab", "run one concentration experiment");
  conclab->add_option("lemma", lemma, "lemma id")
      ->required()
      ->check(CLI::IsMember(benign::harness::conclab_lemmas()));
  conclab->add_option("--set", sets, "parameter override key=value (repeatable)");
  add_common(conclab, c, false, true, true, false);

  std::vector<int> ids;
  auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");
  selftest->add_option("criteria", ids, "criterion ids (default: all)")->check(CLI::Range(1, 12));
  add_common(selftest, c, false, false, true, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kContract;
  }

  try {
    if (*run) return cmd_run(c);
    if (*sweep) return cmd_sweep(c);
    if (*diag) return cmd_diagnose(c);
    if (*conclab) return cmd_conclab(c, lemma, sets);
    return cmd_selftest(c, ids);
  } catch (const benign::ContractError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kContract;
  } catch (const benign::IoError& e) {
    std::fprintf(stderr, "I/O error: %s\n", e.what());
    return kIo;
  } catch (const benign::NumericalError& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return kContract;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kContract;
  }
}
