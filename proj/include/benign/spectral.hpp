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

// Spectral conditions, regime labels and reference bound curves.
//
// The k* condition on the noisy spectrum lambda^xi_i = lambda_i + sigma_xi^2:
//
//   sum_{i > k} lambda^xi_i / lambda^xi_k >= d / b.
//
// Bound curves (constants c, b are unspecified universal constants; c = 1 by
// default so the curves are reference shapes, not certified envelopes):
//
//   V_R <= c sigma0^2 Tr(Sigma) s / (n d)
//   V_R >= (1/c) sigma0^2 Tr(Sigma) s / (n d)
//   B_R <= c (sqrt(log(s / delta) / n) + d^2 sigma_xi / n)

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

#include "benign/numlin.hpp"
#include "benign/synth.hpp"

namespace benign::spectral {

using numlin::Vector;

struct KstarResult {
  std::optional<std::size_t> kstar;  // 1-based
  double b = 4.0;
  double tail_ratio_at_kstar = 0.0;  // NaN when kstar is absent
  std::optional<std::size_t> analytic_prediction;
};

/// Smallest 1-based k with sum_{i>k} lambda_xi_i / lambda_xi_k >= d / b, found
/// with one backward cumulative-sum pass. d is lambdas_xi.size().
KstarResult find_kstar(const Vector& lambdas_xi, double b,
                       std::optional<std::size_t> analytic_prediction = std::nullopt);

/// Tail ratio sum_{i>k} lambda_i / lambda_k for a 1-based k.
double tail_ratio(const Vector& lambdas_xi, std::size_t k);

/// Closed-form k*: r (finite rank), ceil(ln d) + 1 (exponential, lambda_1 = 1
/// normalization), ceil(d^{1/gamma}) (polynomial).
std::size_t analytic_kstar(const synth::SpectrumSpec& spec);

enum class BiasCase { B1, B2, B3 };
std::string_view to_string(BiasCase c);

struct RegimeLabel {
  BiasCase bias_case = BiasCase::B1;
  bool bias_converges = true;
  bool variance_converges = true;
  synth::SpectrumKind scenario = synth::SpectrumKind::polynomial;
};

/// zeta above which the d^2 sigma_xi / n bias term vanishes when
/// alpha in (1/2, 1): 2 alpha - 1 - alpha zeta / 2 < 0, i.e. zeta > 4 - 2/alpha.
double bias_zeta_threshold(double alpha);

/// B1 if alpha <= 1/2; else B2 if zeta >= 2; else B3, convergent iff
/// zeta > 4 - 2/alpha (strict). Variance converges iff kappa < 1 + alpha.
RegimeLabel classify_regime(double alpha, double gamma, double zeta, double kappa,
                            synth::SpectrumKind scenario = synth::SpectrumKind::polynomial);

struct BoundSheet {
  double v_upper = 0.0;
  double v_lower = 0.0;
  double b_upper = 0.0;
  double delta = 0.0;
  double c = 1.0;
};

BoundSheet bound_sheet(double sigma0_sq, double trace_sigma, std::size_t s, std::size_t n,
                       std::size_t d, double sigma_xi, double delta, double c = 1.0);

struct RatePoint {
  std::size_t s = 0;
  std::size_t n = 0;
  std::size_t d = 0;
  double value = 0.0;
};

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// OLS of log(value) on log(s / (n d)). Requires at least 4 points, positive
/// values, and max/min of s/(nd) >= min_span_ratio.
RateFit rate_fit(std::span<const RatePoint> points, double min_span_ratio = 10.0);

}  // namespace benign::spectral
