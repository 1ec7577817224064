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

// Synthetic data-generating process: covariance spectra, clean covariates
// x = Sigma^{1/2} u, additive covariate noise xi, and labels.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "benign/numlin.hpp"
#include "benign/rng.hpp"

namespace benign::synth {

using numlin::Matrix;
using numlin::Vector;

enum class SpectrumKind { polynomial, exponential, finite_rank };
enum class CovariateDist { gaussian, rademacher };
enum class LabelSource { noisy, clean };

std::string_view to_string(SpectrumKind kind);
std::string_view to_string(CovariateDist dist);
std::string_view to_string(LabelSource source);
SpectrumKind parse_spectrum_kind(std::string_view text);
CovariateDist parse_covariate_dist(std::string_view text);
LabelSource parse_label_source(std::string_view text);

/// ceil(base^exponent), snapping to the nearest integer first when the power
/// is integral up to rounding (so 100^0.5 gives 10, not 11).
std::size_t ceil_pow(std::size_t base, double exponent);

struct SpectrumSpec {
  SpectrumKind kind = SpectrumKind::polynomial;
  double gamma = 2.0;     // polynomial decay exponent, > 1
  std::size_t rank = 1;   // finite_rank only
  std::size_t d = 1;

  void validate() const;
};

/// sigma_xi^2 = d^{-zeta}, exactly.
struct NoiseSpec {
  double zeta = 1.0;
  double sigma_xi2 = 0.0;

  static NoiseSpec from_zeta(double zeta, std::size_t d);
};

struct DataModel {
  std::size_t n = 0;
  std::size_t d = 0;
  std::optional<double> alpha;  // set when d was derived as ceil(n^alpha)
  SpectrumSpec spectrum;
  NoiseSpec noise;
  double sigma0_sq = 1.0;
  CovariateDist covariate_dist = CovariateDist::gaussian;

  /// d = ceil(n^alpha) with alpha in (0, 1).
  static DataModel with_alpha(std::size_t n, double alpha, SpectrumSpec spectrum,
                              double zeta, double sigma0_sq,
                              CovariateDist dist = CovariateDist::gaussian);

  void validate() const;
};

/// One realized training set.
struct DesignSet {
  Matrix x;    // n x d clean covariates
  Matrix u;    // n x d latent standardized factors
  Matrix xi;   // n x d covariate noise
  Vector y;    // labels
  Vector eps;  // label noise
  std::uint64_t seed = 0;

  Matrix noisy_covariates() const { return x + xi; }
};

/// lambda_1 >= ... >= lambda_d: i^{-gamma}, e^{-(i-1)}, or r ones then zeros.
Vector make_spectrum(const SpectrumSpec& spec);

/// lambda_i + sigma_xi^2.
Vector noisy_spectrum(const Vector& lambdas, double sigma_xi2);

double trace(const Vector& lambdas);

/// (X, U) with U standardized i.i.d. entries and X = U diag(sqrt(lambda)).
std::pair<Matrix, Matrix> sample_covariates(const Vector& lambdas, std::size_t rows,
                                            CovariateDist dist, Rng& rng);
std::pair<Matrix, Matrix> sample_covariates(const DataModel& model, Rng& rng);

/// Xi with i.i.d. N(0, sigma_xi2) entries.
Matrix sample_covariate_noise(std::size_t n, std::size_t d, double sigma_xi2, Rng& rng);

/// (Y, eps) with eps ~ N(0, sigma0_sq I) and Y = features * beta_star + eps.
std::pair<Vector, Vector> sample_labels(const Matrix& features, const Vector& beta_star,
                                        double sigma0_sq, Rng& rng);

}  // namespace benign::synth
