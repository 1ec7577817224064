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

#include <algorithm>
#include <cmath>

#include "benign/conc_lab.hpp"
#include "benign/errors.hpp"

namespace benign::conc {
namespace {

Vector inverse_square(std::size_t d) {
  return synth::make_spectrum({synth::SpectrumKind::polynomial, 2.0, 1, d});
}

const NamedCheck& check(const ConcReport& r, const std::string& name) {
  const auto it = std::find_if(r.checks.begin(), r.checks.end(),
                               [&](const NamedCheck& c) { return c.name == name; });
  if (it == r.checks.end()) throw std::runtime_error("missing check " + name);
  return *it;
}

CovarianceModel model(std::size_t d, double zeta) {
  return {inverse_square(d), std::pow(static_cast<double>(d), -zeta), synth::CovariateDist::gaussian};
}

void expect_report_invariants(const ConcReport& r) {
  EXPECT_GE(r.empirical_violation_rate, 0.0);
  EXPECT_LE(r.empirical_violation_rate, 1.0);
  EXPECT_GT(r.fitted_constant, 0.0);
  EXPECT_EQ(r.envelope_values.size(), r.trials);
}

TEST(FitConstant, QuantileAndTail) {
  std::vector<double> r(1000);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = static_cast<double>(i + 1);
  // 5% of 1000 = 50 allowed above C
  EXPECT_DOUBLE_EQ(fit_constant(r, 0.05), 950.0);
  // too few exceedances to resolve 1e-3: extrapolated, never below the max
  EXPECT_GE(fit_constant(r, 1e-3), 1000.0);
  EXPECT_THROW(fit_constant({}, 0.1), ContractError);
  EXPECT_THROW(fit_constant(r, 0.0), ContractError);
}

TEST(FitConstant, TailExtrapolationOnExponentialData) {
  // Exp(1): the 1e-3 upper quantile is ln(1000) = 6.91.
  Rng rng(1);
  std::exponential_distribution<double> e(1.0);
  std::vector<double> r(2000);
  for (double& v : r) v = e(rng);
  EXPECT_NEAR(fit_constant(r, 1e-3), std::log(1000.0), 1.5);
}

TEST(ReluMoments, ClosedForms) {
  Rng rng(2);
  const ConcReport r = test_relu_moments(1.0, 1.0, 100000, rng);
  EXPECT_NEAR(check(r, "mean").measured / 0.398942, 1.0, 0.01);
  EXPECT_NEAR(check(r, "variance").measured / 0.340845, 1.0, 0.02);
  EXPECT_NEAR(check(r, "zero_atom").measured, 0.5, 0.005);
  for (const NamedCheck& c : r.checks) EXPECT_TRUE(c.passed) << c.name;
  EXPECT_THROW(test_relu_moments(1.0, 1.0, 999, rng), ContractError);
}

TEST(SubexpSum, ScalarChiSquareTail) {
  // lambda = (1): |g^2 - 1| > t has probability erfc(sqrt((1 + t)/2)) for t >= 1.
  Rng rng(3);
  const double t = 2.0;
  const ConcReport r = test_subexp_sum(Vector::Ones(1), t, 10000, rng);
  const double p = std::erfc(std::sqrt((1.0 + t) / 2.0));
  const double emp = violation_rate(r.envelope_values, 1.0);
  EXPECT_NEAR(emp, p, 4.0 * std::sqrt(p * (1 - p) / 1e4));
  expect_report_invariants(r);
}

TEST(SubexpSum, EnvelopeWithFourHolds) {
  Rng rng(4);
  const ConcReport r = test_subexp_sum(inverse_square(50), 3.0, 10000, rng);
  EXPECT_LE(violation_rate(r.envelope_values, 4.0), 2.0 * std::exp(-3.0));
  EXPECT_LE(r.empirical_violation_rate, 3.0 * r.theoretical_rate);
}

TEST(SubexpSum, LargeTNoViolations) {
  Rng rng(5);
  const ConcReport r = test_subexp_sum(inverse_square(20), 40.0, 2000, rng);
  EXPECT_EQ(violation_rate(r.envelope_values, 1.0), 0.0);
}

TEST(NormConcentration, Examples) {
  Rng rng(6);
  const ConcReport zero = test_norm_concentration(0.7, 0.0, 50, 3.0, 1000, rng);
  EXPECT_EQ(zero.empirical_violation_rate, 0.0);
  for (const EnvelopePoint& p : zero.envelope_values) EXPECT_EQ(p.statistic, 0.0);

  const ConcReport r = test_norm_concentration(0.0, 1.0, 100, 5.0, 10000, rng);
  EXPECT_LE(violation_rate(r.envelope_values, 2.0), 2.0 * std::exp(-5.0));
  EXPECT_TRUE(check(r, "midpoint").passed);
  EXPECT_LE(r.empirical_violation_rate, 3.0 * r.theoretical_rate);

  // mu != 0 path
  const ConcReport shifted = test_norm_concentration(1.0, 0.5, 100, 4.0, 2000, rng);
  EXPECT_TRUE(check(shifted, "midpoint").passed);
  EXPECT_LE(shifted.empirical_violation_rate, 3.0 * shifted.theoretical_rate);
}

TEST(EigenBounds, ScalarAndDeskScale) {
  Rng rng(7);
  const ConcReport one = test_eigen_bounds(Vector::Ones(1), 1, 2.0, 1000, rng);
  expect_report_invariants(one);

  const ConcReport r = test_eigen_bounds(inverse_square(50), 100, 10.0, 1000, rng);
  EXPECT_LE(r.fitted_constant, 10.0);
  EXPECT_TRUE(check(r, "trace_mean").passed);
  EXPECT_LE(r.empirical_violation_rate, 3.0 * r.theoretical_rate);
  EXPECT_THROW(test_eigen_bounds(inverse_square(300), 300, 10.0, 10, rng), ContractError);
}

double mean_statistic(const ConcReport& r) {
  double m = 0;
  for (const EnvelopePoint& p : r.envelope_values) m += p.statistic;
  return m / static_cast<double>(r.envelope_values.size());
}

TEST(MatrixBernstein, RootNScaling) {
  Rng rng(8);
  const CovarianceModel cov = model(10, 1.0);
  const auto map = features::FeatureMap::sample(100, 10, rng);
  const ConcReport a = test_matrix_bernstein(cov, map, 200, 0.05, 300, rng);
  const ConcReport b = test_matrix_bernstein(cov, map, 800, 0.05, 300, rng);
  EXPECT_NEAR(mean_statistic(b) / mean_statistic(a), 0.5, 0.1);
  EXPECT_LE(a.empirical_violation_rate, 3.0 * a.theoretical_rate);
}

TEST(MatrixBernstein, ConstantStableAcrossWidths) {
  Rng rng(9);
  const CovarianceModel cov = model(10, 1.0);
  std::vector<double> cs;
  for (std::size_t s : {50u, 100u, 200u}) {
    const auto map = features::FeatureMap::sample(s, 10, rng);
    cs.push_back(test_matrix_bernstein(cov, map, 200, 0.05, 300, rng, 1, 50000).fitted_constant);
  }
  EXPECT_LE(*std::max_element(cs.begin(), cs.end()) / *std::min_element(cs.begin(), cs.end()), 2.0);
}

TEST(DesignGap, Degenerate) {
  Rng rng(10);
  const CovarianceModel cov{Vector::Zero(5), 0.0, synth::CovariateDist::gaussian};
  const auto map = features::FeatureMap::sample(30, 5, rng);
  const ConcReport r = test_design_gap(cov, map, 50, 100, rng);
  for (const EnvelopePoint& p : r.envelope_values) EXPECT_EQ(p.statistic, 0.0);
  EXPECT_EQ(r.empirical_violation_rate, 0.0);
}

TEST(DesignGap, SamplingTermAndEigenFloor) {
  Rng rng(11);
  const auto map = features::FeatureMap::sample(200, 20, rng);
  const ConcReport r = test_design_gap(model(20, 1.0), map, 400, 200, rng);
  EXPECT_TRUE(check(r, "sampling_term_halving").passed) << check(r, "sampling_term_halving").measured;
  EXPECT_TRUE(check(r, "mu_min_b4").passed) << check(r, "mu_min_b4").measured;
  // The full gap also carries a term from W that does not shrink with n.
  EXPECT_GT(check(r, "full_gap_halving").measured, 0.75);
  EXPECT_THROW(test_design_gap(model(20, 1.0), map, 20, 10, rng), ContractError);
}

TEST(DeltaZ, ZeroNoise) {
  Rng rng(12);
  CovarianceModel cov = model(10, 1.0);
  cov.sigma_xi2 = 0.0;
  const auto map = features::FeatureMap::sample(50, 10, rng);
  const ConcReport r = test_deltaz_bound(cov, map, 100, 50, rng);
  for (const EnvelopePoint& p : r.envelope_values) EXPECT_EQ(p.statistic, 0.0);
}

TEST(DeltaZ, BoundedRatioAcrossDimensions) {
  Rng rng(13);
  for (std::size_t d : {10u, 20u, 40u}) {
    const auto map = features::FeatureMap::sample(100, d, rng);
    const ConcReport r = test_deltaz_bound(model(d, 1.0), map, 200, 200, rng);
    EXPECT_LE(r.fitted_constant, 10.0) << d;
    EXPECT_LE(r.empirical_violation_rate, 3.0 * r.theoretical_rate);
  }
}

TEST(DeltaZ, DoublingNoise) {
  Rng rng(14);
  const auto map = features::FeatureMap::sample(100, 20, rng);
  // small noise: first order in xi
  const ConcReport small = test_deltaz_bound(model(20, 4.0), map, 200, 100, rng);
  EXPECT_TRUE(check(small, "doubling_xi").passed) << check(small, "doubling_xi").measured;
  // at zeta = 1 the second-order part is visible and the growth is superlinear
  const ConcReport large = test_deltaz_bound(model(20, 1.0), map, 200, 100, rng);
  EXPECT_GT(check(large, "doubling_xi").measured, 2.0);
  EXPECT_LT(check(large, "doubling_xi").measured, 4.0);
}

TEST(Reports, MapMustMatchSpectrum) {
  Rng rng(15);
  const auto map = features::FeatureMap::sample(30, 7, rng);
  EXPECT_THROW(test_deltaz_bound(model(10, 1.0), map, 50, 10, rng), ContractError);
  EXPECT_THROW(test_matrix_bernstein(model(10, 1.0), map, 50, 0.05, 10, rng), ContractError);
}

TEST(Reports, WorkerCountDoesNotChangeResults) {
  Rng a(16), b(16);
  const ConcReport one = test_subexp_sum(inverse_square(30), 2.0, 2000, a, 1);
  const ConcReport four = test_subexp_sum(inverse_square(30), 2.0, 2000, b, 4);
  EXPECT_EQ(one.fitted_constant, four.fitted_constant);
  EXPECT_EQ(one.empirical_violation_rate, four.empirical_violation_rate);
}

}  // namespace
}  // namespace benign::conc
