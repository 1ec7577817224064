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


// Monte-Carlo checks of the concentration lemmas the risk bounds rest on.
//
// Every lemma is reduced to a scalar statistic and an envelope shape such
// that the claim reads "statistic <= C * shape with probability >= 1 - p".
// C is an unspecified universal constant, so it is fitted: on a training
// batch, C is the smallest value whose violation frequency is <= p. When the
// batch is too small to resolve p (fewer than 10 expected exceedances), the
// quantile is extrapolated with an exponential tail fitted to the top 5% of
// the batch. A second, independent batch then reports the violation rate at
// the fitted C and its own fitted constant.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "benign/numlin.hpp"
#include "benign/relu_features.hpp"
#include "benign/rng.hpp"
#include "benign/synth.hpp"

namespace benign::conc {

using numlin::Matrix;
using numlin::Vector;

struct EnvelopePoint {
  double statistic = 0.0;
  double shape = 0.0;
  double bound = 0.0;  // fitted_constant * shape
};

struct NamedCheck {
  std::string name;
  double measured = 0.0;
  double expected = 0.0;
  double rel_err = 0.0;
  bool passed = true;
};

struct ConcReport {
  std::string lemma_id;
  std::size_t trials = 0;                 // per batch
  double empirical_violation_rate = 0.0;  // validation batch, at fitted_constant
  double theoretical_rate = 0.0;
  double fitted_constant = 1.0;           // training batch
  double validation_constant = 1.0;      // same fit, validation batch
  std::vector<EnvelopePoint> envelope_values;  // validation batch
  std::vector<NamedCheck> checks;

  /// max/min of the two fitted constants.
  double constant_ratio() const;
};

/// Smallest C with #{ratio > C} <= rate * size, or the exponential-tail
/// extrapolation when rate * size < 10. Never returns less than the smallest
/// positive double.
double fit_constant(std::vector<double> ratios, double rate);

/// Fraction of points with statistic > c * shape.
double violation_rate(const std::vector<EnvelopePoint>& points, double c);

/// Covariance description shared by the feature-level lemmas.
struct CovarianceModel {
  Vector lambdas;
  double sigma_xi2 = 0.0;
  synth::CovariateDist dist = synth::CovariateDist::gaussian;

  static CovarianceModel from(const synth::DataModel& model);
};

/// z = max(0, w^T x) with w ~ N(0, sigma_w^2 I): mean sigma/sqrt(2 pi),
/// variance (sigma^2/2)(1 - 1/pi), P(z = 0) = 1/2 for sigma = sigma_w ||x||.
/// Nothing is fitted; the three comparisons are in `checks`.
ConcReport test_relu_moments(double sigma_w, double x_norm, std::size_t m, Rng& rng);

/// |sum lambda_i (g_i^2 - 1)| <= a max(lambda_1 t, sqrt(t sum lambda_i^2)), rate 2e^{-t}.
ConcReport test_subexp_sum(const Vector& lambdas, double t, std::size_t trials, Rng& rng,
                           std::size_t workers = 1);

/// u_i = mu + sigma g_i: | ||u||^2 - n(mu^2 + sigma^2) | <= a sigma^2 (t + sqrt(n t)).
ConcReport test_norm_concentration(double mu, double sigma, std::size_t n, double t,
                                   std::size_t trials, Rng& rng, std::size_t workers = 1);

/// A = sum_i lambda_i w_i w_i^T with w_i ~ N(0, I_s), N = min(s, d):
/// max(|mu_1 - S|, |mu_N - S|) <= a (lambda_1 T + sqrt(T sum lambda_i^2)),
/// S = sum_{i<=N} lambda_i, T = t + N log 9. Only the combined envelope is
/// identifiable at this scale.
ConcReport test_eigen_bounds(const Vector& lambdas, std::size_t s, double t, std::size_t trials,
                             Rng& rng, std::size_t workers = 1);

/// ||(1/n) sum z z^T - E z z^T|| <= c sqrt(log(s/delta)/n), rate delta. The
/// expectation is replaced by an average over `reference_samples` draws.
ConcReport test_matrix_bernstein(const CovarianceModel& model, const features::FeatureMap& map,
                                 std::size_t n, double delta, std::size_t trials, Rng& rng,
                                 std::size_t workers = 1,
                                 std::size_t reference_samples = 100000);

/// ||(1/n) Z_xi^T Z_xi - W Sigma_xi W^T|| against sqrt(d/n) d sigma_w^2
/// (nominal rate 0.05). Also reports the sampling term
/// W Sigma_xi^{1/2} ((1/n) U^T U - I) Sigma_xi^{1/2} W^T at n and 4n, and the
/// lower eigenvalue envelope mu_d(W Sigma_xi W^T) >= d sigma_w^2 / b with
/// freshly drawn W per trial.
ConcReport test_design_gap(const CovarianceModel& model, const features::FeatureMap& map,
                           std::size_t n, std::size_t trials, Rng& rng, std::size_t workers = 1);

/// ||(1/n) dZ^T Z|| with dZ = Z - Z_xi against d^2 sigma_xi / n (nominal rate
/// 0.05). Also compares the norm at 2 xi with the norm at xi.
ConcReport test_deltaz_bound(const CovarianceModel& model, const features::FeatureMap& map,
                             std::size_t n, std::size_t trials, Rng& rng,
                             std::size_t workers = 1);

inline constexpr double kNominalRate = 0.05;

}  // namespace benign::conc
