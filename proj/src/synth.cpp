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

#include "benign/synth.hpp"

#include <cmath>
#include <string>

#include "benign/errors.hpp"

namespace benign::synth {

std::string_view to_string(SpectrumKind kind) {
  switch (kind) {
    case SpectrumKind::polynomial: return "polynomial";
    case SpectrumKind::exponential: return "exponential";
    case SpectrumKind::finite_rank: return "finite_rank";
  }
  return "?";
}

std::string_view to_string(CovariateDist dist) {
  return dist == CovariateDist::gaussian ? "gaussian" : "rademacher";
}

std::string_view to_string(LabelSource source) {
  return source == LabelSource::noisy ? "noisy" : "clean";
}

SpectrumKind parse_spectrum_kind(std::string_view text) {
  if (text == "polynomial") return SpectrumKind::polynomial;
  if (text == "exponential") return SpectrumKind::exponential;
  if (text == "finite_rank") return SpectrumKind::finite_rank;
  throw ContractError("spectrum_kind: expected polynomial|exponential|finite_rank, got '" +
                      std::string(text) + "'");
}

CovariateDist parse_covariate_dist(std::string_view text) {
  if (text == "gaussian") return CovariateDist::gaussian;
  if (text == "rademacher") return CovariateDist::rademacher;
  throw ContractError("covariate_dist: expected gaussian|rademacher, got '" +
                      std::string(text) + "'");
}

LabelSource parse_label_source(std::string_view text) {
  if (text == "noisy") return LabelSource::noisy;
  if (text == "clean") return LabelSource::clean;
  throw ContractError("labels_from: expected noisy|clean, got '" + std::string(text) + "'");
}

std::size_t ceil_pow(std::size_t base, double exponent) {
  const double v = std::pow(static_cast<double>(base), exponent);
  const double nearest = std::round(v);
  if (std::abs(v - nearest) <= 1e-9 * std::max(1.0, v))
    return static_cast<std::size_t>(nearest);
  return static_cast<std::size_t>(std::ceil(v));
}

void SpectrumSpec::validate() const {
  require(d >= 1, "spectrum: d must be >= 1");
  switch (kind) {
    case SpectrumKind::polynomial:
      require(gamma > 1.0, "spectrum: polynomial decay requires gamma > 1, got " +
                               std::to_string(gamma));
      break;
    case SpectrumKind::finite_rank:
      require(rank >= 1 && rank <= d, "spectrum: finite_rank requires 1 <= rank <= d");
      break;
    case SpectrumKind::exponential:
      break;
  }
}

NoiseSpec NoiseSpec::from_zeta(double zeta, std::size_t d) {
  require(zeta >= 1.0, "noise: zeta must be >= 1, got " + std::to_string(zeta));
  require(d >= 1, "noise: d must be >= 1");
  return NoiseSpec{zeta, std::pow(static_cast<double>(d), -zeta)};
}

DataModel DataModel::with_alpha(std::size_t n, double alpha, SpectrumSpec spectrum,
                                double zeta, double sigma0_sq, CovariateDist dist) {
  require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0, 1)");
  DataModel m;
  m.n = n;
  m.d = ceil_pow(n, alpha);
  m.alpha = alpha;
  spectrum.d = m.d;
  m.spectrum = spectrum;
  m.noise = NoiseSpec::from_zeta(zeta, m.d);
  m.sigma0_sq = sigma0_sq;
  m.covariate_dist = dist;
  m.validate();
  return m;
}

void DataModel::validate() const {
  require(n >= 1, "model: n must be >= 1");
  require(d >= 1 && d < n, "model: need 1 <= d < n, got d=" + std::to_string(d) +
                               ", n=" + std::to_string(n));
  require(spectrum.d == d, "model: spectrum dimension does not match d");
  spectrum.validate();
  require(noise.zeta >= 1.0, "model: zeta must be >= 1");
  require(noise.sigma_xi2 >= 0.0, "model: sigma_xi2 must be >= 0");
  require(sigma0_sq >= 0.0 && std::isfinite(sigma0_sq), "model: sigma0_sq must be >= 0");
}

Vector make_spectrum(const SpectrumSpec& spec) {
  spec.validate();
  Vector lambdas(static_cast<Eigen::Index>(spec.d));
  for (std::size_t i = 0; i < spec.d; ++i) {
    const double idx = static_cast<double>(i + 1);
    double v = 0.0;
    switch (spec.kind) {
      case SpectrumKind::polynomial: v = std::pow(idx, -spec.gamma); break;
      case SpectrumKind::exponential: v = std::exp(-(idx - 1.0)); break;
      case SpectrumKind::finite_rank: v = (i < spec.rank) ? 1.0 : 0.0; break;
    }
    lambdas(static_cast<Eigen::Index>(i)) = v;
  }
  return lambdas;
}

Vector noisy_spectrum(const Vector& lambdas, double sigma_xi2) {
  require(sigma_xi2 >= 0.0, "noisy_spectrum: sigma_xi2 must be >= 0");
  for (Eigen::Index i = 0; i < lambdas.size(); ++i) {
    require(lambdas(i) >= 0.0, "noisy_spectrum: eigenvalues must be nonnegative");
    if (i > 0) require(lambdas(i) <= lambdas(i - 1), "noisy_spectrum: eigenvalues must be descending");
  }
  return lambdas.array() + sigma_xi2;
}

double trace(const Vector& lambdas) { return lambdas.sum(); }

std::pair<Matrix, Matrix> sample_covariates(const Vector& lambdas, std::size_t rows,
                                            CovariateDist dist, Rng& rng) {
  require(rows >= 1 && lambdas.size() >= 1, "sample_covariates: empty shape");
  require((lambdas.array() >= 0.0).all(), "sample_covariates: eigenvalues must be nonnegative");
  const auto n = static_cast<Eigen::Index>(rows);
  Matrix u = dist == CovariateDist::gaussian ? gaussian_matrix(n, lambdas.size(), 1.0, rng)
                                             : rademacher_matrix(n, lambdas.size(), rng);
  Matrix x = u * lambdas.cwiseSqrt().asDiagonal();
  return {std::move(x), std::move(u)};
}

std::pair<Matrix, Matrix> sample_covariates(const DataModel& model, Rng& rng) {
  model.validate();
  return sample_covariates(make_spectrum(model.spectrum), model.n, model.covariate_dist, rng);
}

Matrix sample_covariate_noise(std::size_t n, std::size_t d, double sigma_xi2, Rng& rng) {
  require(sigma_xi2 >= 0.0, "sample_covariate_noise: sigma_xi2 must be >= 0");
  return gaussian_matrix(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d),
                         std::sqrt(sigma_xi2), rng);
}

std::pair<Vector, Vector> sample_labels(const Matrix& features, const Vector& beta_star,
                                        double sigma0_sq, Rng& rng) {
  require(features.cols() == beta_star.size(),
          "sample_labels: beta_star has length " + std::to_string(beta_star.size()) +
              " but there are " + std::to_string(features.cols()) + " features");
  require(sigma0_sq >= 0.0, "sample_labels: sigma0_sq must be >= 0");
  Vector eps = gaussian_matrix(features.rows(), 1, std::sqrt(sigma0_sq), rng).col(0);
  Vector y = features * beta_star + eps;
  return {std::move(y), std::move(eps)};
}

}  // namespace benign::synth
