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


#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "benign/errors.hpp"
#include "benign/harness/config.hpp"
#include "benign/harness/diagnose.hpp"
#include "benign/harness/experiment.hpp"
#include "benign/harness/sweep.hpp"

namespace benign::harness {
namespace {

namespace fs = std::filesystem;

ExperimentConfig small(std::string_view extra = "") {
  std::string text = "n = 40\nd = 6\ns = 80\nm_test = 200\nm_eps = 20\nreplicates = 2\nmaster_seed = 3\n";
  text += extra;
  return parse_config(text);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("benign_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / name;
}

TEST(Config, ParsesAndDerives) {
  const ExperimentConfig c = parse_config("# comment\nn = 100\nalpha = 0.5\nkappa = 1.2\n\n");
  EXPECT_EQ(c.resolved_d(), 10u);
  EXPECT_EQ(c.resolved_s(), 252u);  // ceil(100^1.2) = ceil(251.19)
  EXPECT_EQ(c.m_test, 2000u);
  EXPECT_DOUBLE_EQ(c.resolved_rel_tol(), 1e-12 * 252);
  EXPECT_DOUBLE_EQ(c.data_model().noise.sigma_xi2, 0.1);
}

TEST(Config, Errors) {
  auto fails_naming = [](const std::string& text, const std::string& field) {
    try {
      parse_config(text);
      ADD_FAILURE() << "accepted: " << text;
    } catch (const ContractError& e) {
      EXPECT_NE(std::string(e.what()).find(field), std::string::npos) << e.what();
    }
  };
  fails_naming("n = 100\nalpha = 0.5\ns = 10\nbogus = 1\n", "bogus");
  fails_naming("n = 100\nalpha = 0.5\nd = 10\ns = 10\n", "alpha");
  fails_naming("n = 100\nd = 10\ns = 10\nkappa = 1\n", "kappa");
  fails_naming("n = 100\nd = 10\ns = 10\nreplicates = 0\n", "replicates");
  fails_naming("n = 100\nd = 100\ns = 10\n", "d");
  fails_naming("n = 100\nd = 10\ns = 10\ngamma = 1\n", "gamma");
  fails_naming("n = 100\nd = 10\ns = 10\nm_eps = 1\n", "m_eps");
  fails_naming("n = 100\nd = 10\ns = 10\nn = 50\n", "n");
  fails_naming("n = 100\nd = 10\n", "s");
  fails_naming("n = ten\nd = 10\ns = 10\n", "n");
  EXPECT_THROW(parse_config("n 100\n"), ContractError);
  EXPECT_THROW(load_config("/nonexistent/x.cfg"), IoError);
}

TEST(Config, SetClearsPartner) {
  ExperimentConfig c = small();
  c.set("alpha", "0.5");
  EXPECT_FALSE(c.d);
  EXPECT_EQ(c.resolved_d(), 7u);
  c.set("kappa", "1.1");
  EXPECT_FALSE(c.s);
  c.set("pinv_rel_tol", "auto");
  EXPECT_FALSE(c.pinv_rel_tol);
}

TEST(Experiment, DimensionRecordedInEveryRow) {
  ExperimentConfig c = parse_config("n = 100\nalpha = 0.5\ns = 150\nm_test = 100\nm_eps = 0\nreplicates = 3\n");
  const auto rows = run_experiment(c);
  ASSERT_EQ(rows.size(), 3u);
  for (const ResultRow& r : rows) {
    EXPECT_EQ(r.config.resolved_d(), 10u);
    EXPECT_FALSE(r.failed);
    EXPECT_TRUE(std::isnan(r.mc_risk));
    EXPECT_DOUBLE_EQ(r.excess_risk, r.bias + r.variance);
  }
}

TEST(Experiment, Deterministic) {
  const ExperimentConfig c = small();
  std::ostringstream a, b;
  write_csv(a, run_experiment(c));
  write_csv(b, run_experiment(c));
  EXPECT_EQ(a.str(), b.str());
  const ExperimentConfig other = small("labels_from = noisy\n");
  std::ostringstream d;
  ExperimentConfig reseeded = other;
  reseeded.master_seed = 4;
  write_csv(d, run_experiment(reseeded));
  EXPECT_NE(a.str(), d.str());
}

TEST(Experiment, NoiselessConsistency) {
  const auto rows = run_experiment(small("sigma0_sq = 0\n"));
  for (const ResultRow& r : rows) {
    EXPECT_EQ(r.variance, 0.0);
    EXPECT_EQ(r.numerical_rank, 40u);
    EXPECT_NEAR(r.mc_risk, r.bias, 1e-10 * std::max(1.0, r.bias));
  }
}

TEST(Experiment, ConditionFourRowsHavePositiveVariance) {
  const auto rows = run_experiment(
      parse_config("n = 100\nd = 10\ns = 400\nm_test = 100\nm_eps = 0\nreplicates = 3\n"));
  for (const ResultRow& r : rows) {
    if (r.cond4_holds) {
      EXPECT_TRUE(std::isfinite(r.variance));
      EXPECT_GT(r.variance, 0.0);
    }
  }
}

TEST(Experiment, CleanLabelsRun) {
  const auto rows = run_experiment(small("labels_from = clean\nsigma0_sq = 0\n"));
  for (const ResultRow& r : rows) {
    EXPECT_FALSE(r.failed);
    EXPECT_NEAR(r.mc_risk, r.bias, 1e-10 * std::max(1.0, r.bias));
  }
}

TEST(Experiment, NumericalFailureMarksRow) {
  RunOptions opts;
  opts.projector_tol = -1.0;  // every defect exceeds this
  const auto rows = run_experiment(small(), 0, opts);
  for (const ResultRow& r : rows) {
    EXPECT_TRUE(r.failed);
    EXPECT_FALSE(r.error.empty());
  }
  std::ostringstream out;
  write_csv(out, rows);
  EXPECT_EQ(out.str(), csv_header() + "\n");
}

TEST(Csv, SchemaAndFormatting) {
  const auto& cols = csv_columns();
  EXPECT_EQ(cols.front(), "cell");
  const std::string header = csv_header();
  EXPECT_EQ(std::count(header.begin(), header.end(), ','), static_cast<long>(cols.size()) - 1);
  const auto rows = run_experiment(small());
  const std::string line = csv_row(rows[0]);
  EXPECT_EQ(std::count(line.begin(), line.end(), ','), static_cast<long>(cols.size()) - 1);
  EXPECT_NE(line.find("NA"), std::string::npos);  // alpha and kappa unset
  const std::string desc = columns_description();
  EXPECT_EQ(std::count(desc.begin(), desc.end(), '\n'),
            static_cast<long>(cols.size()));
}

TEST(Grid, CartesianOrderAndCap) {
  const SweepGrid g = parse_grid("n = 40\nd = 4\ns = 20, 60\nzeta = 1, 2, 3\nm_test = 50\nm_eps = 0\n");
  ASSERT_EQ(g.cell_count(), 6u);
  // last axis fastest
  EXPECT_EQ(g.cell(0).s, 20u);
  EXPECT_DOUBLE_EQ(g.cell(1).zeta, 2.0);
  EXPECT_EQ(g.cell(3).s, 60u);
  EXPECT_DOUBLE_EQ(g.cell(5).zeta, 3.0);
  EXPECT_THROW(g.cell(6), ContractError);
  EXPECT_THROW(parse_grid("n = 40\nd = 4\ns = 20, 60\nzeta = 1, 2, 3\n", 5), ContractError);
  EXPECT_THROW(parse_grid("n = 40\nd = 4\ns = 20, 600000\nm_test = 0\n"), ContractError);
}

TEST(Sweep, OneCellMatchesExperiment) {
  const SweepGrid g = parse_grid("n = 40\nd = 6\ns = 80\nm_test = 200\nm_eps = 20\nreplicates = 2\nmaster_seed = 3\n");
  std::ostringstream a, b;
  write_csv(a, run_grid(g, 1));
  write_csv(b, run_experiment(small()));
  EXPECT_EQ(a.str(), b.str());
}

TEST(Sweep, WorkerCountIndependent) {
  const SweepGrid g = parse_grid("n = 40\nd = 5\ns = 20, 40, 80, 160\nzeta = 1, 2\nm_test = 100\nm_eps = 5\nreplicates = 2\n");
  const fs::path p1 = scratch("w1.csv"), p4 = scratch("w4.csv");
  const SweepSummary s1 = run_sweep(g, p1.string(), 1);
  const SweepSummary s4 = run_sweep(g, p4.string(), 4);
  EXPECT_EQ(s1.rows_written, 16u);
  EXPECT_EQ(s4.rows_written, 16u);
  EXPECT_EQ(slurp(p1), slurp(p4));
  EXPECT_TRUE(fs::exists(p1.string() + ".columns.txt"));
  // one row group per s, in order
  std::istringstream lines(slurp(p1));
  std::string line;
  std::getline(lines, line);
  std::size_t count = 0;
  while (std::getline(lines, line)) ++count;
  EXPECT_EQ(count, 16u);
}

TEST(Sweep, UnwritablePathFailsFirst) {
  const SweepGrid g = parse_grid("n = 40\nd = 5\ns = 20\nm_test = 10\nm_eps = 0\n");
  EXPECT_THROW(run_sweep(g, "/nonexistent_dir/out.csv", 1), IoError);
}

TEST(Sweep, FailuresAreEnumerated) {
  const SweepGrid g = parse_grid("n = 40\nd = 5\ns = 20, 80\nm_test = 10\nm_eps = 0\nreplicates = 2\n");
  RunOptions opts;
  opts.projector_tol = -1.0;
  const SweepSummary s = run_sweep(g, scratch("fail.csv").string(), 2, opts);
  EXPECT_EQ(s.cells, 2u);
  EXPECT_EQ(s.rows_written, 0u);
  EXPECT_EQ(s.failures.size(), 4u);
  EXPECT_EQ(s.rows_written + s.failures.size(), s.cells * 2);
}

TEST(Diagnose, RegimeExamples) {
  const Diagnostics b3 = diagnose(parse_config("n = 1000\nalpha = 0.8\nzeta = 1.2\ngamma = 2\nkappa = 1.2\n"));
  EXPECT_EQ(b3.regime.bias_case, spectral::BiasCase::B3);
  EXPECT_FALSE(b3.regime.bias_converges);
  EXPECT_NE(b3.text.find("B3"), std::string::npos);

  const Diagnostics fr = diagnose(parse_config(
      "n = 1000\nd = 100\ns = 500\nspectrum_kind = finite_rank\nrank = 5\n"));
  EXPECT_EQ(fr.regime.scenario, synth::SpectrumKind::finite_rank);
  ASSERT_TRUE(fr.kstar.kstar);
  EXPECT_EQ(*fr.kstar.kstar, 6u);
  EXPECT_EQ(fr.kstar.analytic_prediction, std::optional<std::size_t>(5));

  const Diagnostics warn = diagnose(parse_config("n = 100\nd = 10\ns = 50\ngamma = 2\nzeta = 2\n"));
  EXPECT_FALSE(warn.warnings.empty());
  const Diagnostics quiet = diagnose(parse_config("n = 100\nd = 10\ns = 50\ngamma = 2\nzeta = 1\n"));
  EXPECT_TRUE(quiet.warnings.empty());
}

}  // namespace
}  // namespace benign::harness
