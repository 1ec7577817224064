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

#include "benign/risk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "benign/errors.hpp"

namespace benign::risk {

namespace {

double mean_and_stderr(const Vector& samples, double* std_error) {
  const auto k = static_cast<double>(samples.size());
  const double mean = samples.mean();
  const double ss = (samples.array() - mean).square().sum();
  *std_error = std::sqrt(ss / (k - 1.0) / k);
  return mean;
}

}  // namespace

Vector NullProjector::apply(const Vector& v) const {
  return solver_->project_row_space(v) - v;
}

double NullProjector::defect(const Matrix& z, const Vector& probe) const {
  const double scale = probe.norm();
  if (scale == 0.0) return 0.0;
  const Vector pv = apply(probe);
  const double idem = (apply(pv) + pv).norm() / scale;
  // The largest retained singular value is ||Z||_2.
  const double zn = solver_->rank() > 0 ? solver_->sigma()(0) : 0.0;
  const double annihilation = zn > 0.0 ? (z * pv).norm() / (zn * scale) : 0.0;
  return std::max(idem, annihilation);
}

RiskContext::RiskContext(const Matrix& z_xi, const Matrix& test_features, double rel_tol)
    : solver_(z_xi, rel_tol), test_features_(test_features) {
  require(test_features.rows() >= 1, "risk: need at least one test point (m >= 1)");
  require(test_features.cols() == z_xi.cols(),
          "risk: test features have " + std::to_string(test_features.cols()) +
              " columns, training features have " + std::to_string(z_xi.cols()));
  whitened_ = (test_features_ * solver_.right()) * solver_.sigma().cwiseInverse().asDiagonal();
}

double RiskContext::variance_exact(double sigma0_sq) const {
  require(sigma0_sq >= 0.0, "variance_exact: sigma0_sq must be >= 0");
  if (whitened_.cols() == 0) return 0.0;
  return sigma0_sq * whitened_.rowwise().squaredNorm().mean();
}

double RiskContext::bias_exact(const Vector& beta_star) const {
  require(static_cast<std::size_t>(beta_star.size()) == solver_.cols(),
          "bias_exact: beta_star has length " + std::to_string(beta_star.size()) +
              ", expected " + std::to_string(solver_.cols()));
  const Vector residual = NullProjector(solver_).apply(beta_star);
  return (test_features_ * residual).squaredNorm() / static_cast<double>(test_count());
}

double RiskContext::bias_for_signal(const Vector& beta_star, const Vector& signal) const {
  require(static_cast<std::size_t>(beta_star.size()) == solver_.cols(),
          "bias_for_signal: beta_star length must equal the feature count");
  const Vector residual = solver_.solve(signal) - beta_star;
  return (test_features_ * residual).squaredNorm() / static_cast<double>(test_count());
}

NoiseMonteCarlo monte_carlo_from_draws(const RiskContext& ctx, const Vector& beta_star,
                                       const Vector& signal, const Matrix& noise) {
  const auto& solver = ctx.solver();
  require(noise.cols() >= 2, "monte_carlo: need at least two label-noise draws");
  require(static_cast<std::size_t>(noise.rows()) == solver.rows() &&
              static_cast<std::size_t>(signal.size()) == solver.rows(),
          "monte_carlo: noise/signal length must equal the training size");
  require(static_cast<std::size_t>(beta_star.size()) == solver.cols(),
          "monte_carlo: beta_star length must equal the feature count");

  const Eigen::Index k = noise.cols();
  const auto kd = static_cast<double>(k);
  const auto md = static_cast<double>(ctx.test_count());

  Matrix y = noise;
  y.colwise() += signal;
  // Predictions at every test point for every refit: f = (S^{-1} V^T z)^T (U^T y).
  const Matrix pred = ctx.whitened_test() * (solver.left().transpose() * y);
  const Vector target = ctx.test_features() * beta_star;

  NoiseMonteCarlo out;
  out.draws = static_cast<std::size_t>(k);

  const Vector per_draw_risk =
      (pred.colwise() - target).colwise().squaredNorm().transpose() / md;
  out.risk.value = mean_and_stderr(per_draw_risk, &out.risk.std_error);

  const Vector row_mean = pred.rowwise().mean();
  const Matrix dev = pred.colwise() - row_mean;
  const Vector row_ss = dev.rowwise().squaredNorm();
  out.variance.value = row_ss.mean() / (kd - 1.0);

  if (k < 3) {
    out.variance.std_error =
        row_ss.maxCoeff() == 0.0 ? 0.0 : std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  // Leave-one-draw-out: sum_{k' != k} (f - mean_{-k})^2 = Q - K/(K-1) D_k^2.
  const double mean_q = row_ss.mean();
  const Vector dev_sq_mean = dev.array().square().colwise().mean().transpose();
  const Vector loo = (mean_q - kd / (kd - 1.0) * dev_sq_mean.array()) / (kd - 2.0);
  const double loo_mean = loo.mean();
  out.variance.std_error =
      std::sqrt((kd - 1.0) / kd * (loo.array() - loo_mean).square().sum());
  return out;
}

NoiseMonteCarlo monte_carlo(const RiskContext& ctx, const Vector& beta_star,
                            const Vector& signal, double sigma0_sq, std::size_t m_eps,
                            Rng& rng) {
  require(sigma0_sq >= 0.0, "monte_carlo: sigma0_sq must be >= 0");
  require(m_eps >= 2, "monte_carlo: m_eps must be >= 2");
  const Matrix noise = gaussian_matrix(static_cast<Eigen::Index>(ctx.solver().rows()),
                                       static_cast<Eigen::Index>(m_eps), std::sqrt(sigma0_sq),
                                       rng);
  return monte_carlo_from_draws(ctx, beta_star, signal, noise);
}

Matrix test_features(const features::FeatureMap& map, const Matrix& test_x) {
  require(test_x.rows() >= 1, "risk: need at least one test point (m >= 1)");
  return map.feature_matrix(test_x);
}

double variance_exact(const Matrix& z_xi, const features::FeatureMap& map, double sigma0_sq,
                      const Matrix& test_x, double rel_tol) {
  const RiskContext ctx(z_xi, test_features(map, test_x), rel_tol);
  return ctx.variance_exact(sigma0_sq);
}

double bias_exact(const Matrix& z_xi, const features::FeatureMap& map, const Vector& beta_star,
                  const Matrix& test_x, double rel_tol) {
  const RiskContext ctx(z_xi, test_features(map, test_x), rel_tol);
  return ctx.bias_exact(beta_star);
}

Estimate variance_mc(const Matrix& z_xi, const features::FeatureMap& map, double sigma0,
                     const Matrix& test_x, std::size_t m_eps, Rng& rng, double rel_tol) {
  require(sigma0 >= 0.0, "variance_mc: sigma0 must be >= 0");
  const RiskContext ctx(z_xi, test_features(map, test_x), rel_tol);
  const Vector zero_beta = Vector::Zero(z_xi.cols());
  const Vector zero_signal = Vector::Zero(z_xi.rows());
  return monte_carlo(ctx, zero_beta, zero_signal, sigma0 * sigma0, m_eps, rng).variance;
}

RiskReport evaluate(const RiskContext& ctx, const Vector& beta_star, const Vector& signal,
                    double sigma0_sq, std::size_t m_eps, Rng& rng) {
  RiskReport r;
  r.bias = ctx.bias_exact(beta_star);
  r.variance = ctx.variance_exact(sigma0_sq);
  r.excess_risk = r.bias + r.variance;
  r.m_test = ctx.test_count();
  r.m_eps = m_eps;
  if (m_eps == 0) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    r.mc_risk = r.mc_stderr = r.variance_mc = r.variance_mc_stderr = nan;
    return r;
  }
  const NoiseMonteCarlo mc = monte_carlo(ctx, beta_star, signal, sigma0_sq, m_eps, rng);
  r.mc_risk = mc.risk.value;
  r.mc_stderr = mc.risk.std_error;
  r.variance_mc = mc.variance.value;
  r.variance_mc_stderr = mc.variance.std_error;
  return r;
}

double decomposition_check(const RiskReport& report) {
  const double gap = std::abs(report.mc_risk - (report.bias + report.variance));
  return gap / std::max(report.mc_risk, 1e-12);
}

double decomposition_zscore(const RiskReport& report) {
  const double total = report.bias + report.variance;
  const double gap = std::abs(report.mc_risk - total);
  if (report.mc_stderr > 0.0) return gap / report.mc_stderr;
  return gap <= 1e-12 * std::max(1.0, total) ? 0.0 : std::numeric_limits<double>::infinity();
}

}  // namespace benign::risk
