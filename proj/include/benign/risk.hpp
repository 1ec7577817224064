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

// Conditional bias/variance of the MNLS interpolator trained on noisy
// features Z_xi and evaluated at clean test covariates.
//
// With the thin SVD Z_xi = U S V^T (rank r) and
// Pi_xi = (Z_xi^T Z_xi)^+ Z_xi^T Z_xi - I = V V^T - I:
//
//   B_R = E_x (z_x^T Pi_xi beta_*)^2
//   V_R = sigma0^2 E_x z_x^T (Z_xi^T Z_xi)^+ z_x = sigma0^2 E_x ||S^{-1} V^T z_x||^2
//
// E_x is a sample mean over m clean test points. Both are exact in the label
// noise; the Monte-Carlo routines below estimate the same quantities by
// redrawing eps and refitting, and serve as their oracle.

#pragma once

#include <cstddef>

#include "benign/interpolator.hpp"
#include "benign/numlin.hpp"
#include "benign/relu_features.hpp"
#include "benign/rng.hpp"

namespace benign::risk {

using numlin::Matrix;
using numlin::Vector;

/// Pi_xi applied implicitly through the retained right singular vectors.
class NullProjector {
 public:
  explicit NullProjector(const interp::MnlsSolver& solver) : solver_(&solver) {}

  /// Pi_xi v = V V^T v - v.
  Vector apply(const Vector& v) const;

  /// max(||Pi(Pi v) + Pi v||, ||Z Pi v|| / ||Z||_2) relative to ||v||, for a
  /// probe v. Both vanish for an exact (negated) null-space projector. z must
  /// be the matrix the solver was built from.
  double defect(const Matrix& z, const Vector& probe) const;

 private:
  const interp::MnlsSolver* solver_;
};

/// Everything the estimators need about one (training design, test set) pair.
/// Holds the shared SVD of Z_xi; read-only after construction.
class RiskContext {
 public:
  RiskContext(const Matrix& z_xi, const Matrix& test_features, double rel_tol);

  const interp::MnlsSolver& solver() const { return solver_; }
  const Matrix& test_features() const { return test_features_; }
  std::size_t test_count() const { return static_cast<std::size_t>(test_features_.rows()); }

  /// Row j: S^{-1} V^T z_{x_j}.
  const Matrix& whitened_test() const { return whitened_; }

  /// sigma0^2 (1/m) sum_j ||S^{-1} V^T z_j||^2.
  double variance_exact(double sigma0_sq) const;

  /// (1/m) sum_j (z_j^T Pi_xi beta_*)^2.
  double bias_exact(const Vector& beta_star) const;

  /// (1/m) sum_j (z_j^T (Z_xi^+ signal - beta_*))^2 for labels signal + eps.
  /// Equals bias_exact when signal = Z_xi beta_*; with clean-feature labels
  /// it also absorbs the mismatch between Z and Z_xi.
  double bias_for_signal(const Vector& beta_star, const Vector& signal) const;

 private:
  interp::MnlsSolver solver_;
  Matrix test_features_;
  Matrix whitened_;
};

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

struct NoiseMonteCarlo {
  Estimate risk;      // mean over draws of (1/m) sum_j (f(x_j) - f_H(x_j))^2
  Estimate variance;  // (1/m) sum_j Var_eps f(x_j), jackknife stderr over draws
  std::size_t draws = 0;
};

/// Refits on Y_k = signal + noise.col(k) for every column k and evaluates on
/// the context's test set. `signal` is the noiseless training response
/// (Z_xi beta_* under the well-specified convention).
NoiseMonteCarlo monte_carlo_from_draws(const RiskContext& ctx, const Vector& beta_star,
                                       const Vector& signal, const Matrix& noise);

/// Same, drawing m_eps columns of N(0, sigma0^2) label noise from rng.
NoiseMonteCarlo monte_carlo(const RiskContext& ctx, const Vector& beta_star,
                            const Vector& signal, double sigma0_sq, std::size_t m_eps,
                            Rng& rng);

/// Test features z_{x_j} for clean test covariates.
Matrix test_features(const features::FeatureMap& map, const Matrix& test_x);

double variance_exact(const Matrix& z_xi, const features::FeatureMap& map, double sigma0_sq,
                      const Matrix& test_x, double rel_tol);
double bias_exact(const Matrix& z_xi, const features::FeatureMap& map, const Vector& beta_star,
                  const Matrix& test_x, double rel_tol);
Estimate variance_mc(const Matrix& z_xi, const features::FeatureMap& map, double sigma0,
                     const Matrix& test_x, std::size_t m_eps, Rng& rng, double rel_tol);

struct RiskReport {
  double bias = 0.0;
  double variance = 0.0;
  double misspecification = 0.0;  // identically 0 under f_* = f_H
  double excess_risk = 0.0;       // bias + variance
  double mc_risk = 0.0;
  double mc_stderr = 0.0;
  double variance_mc = 0.0;
  double variance_mc_stderr = 0.0;
  std::size_t m_test = 0;
  std::size_t m_eps = 0;
};

/// Exact B_R, V_R plus the noise Monte-Carlo estimates, on one context.
RiskReport evaluate(const RiskContext& ctx, const Vector& beta_star, const Vector& signal,
                    double sigma0_sq, std::size_t m_eps, Rng& rng);

/// |mc_risk - (bias + variance)| / max(mc_risk, 1e-12).
double decomposition_check(const RiskReport& report);

/// |mc_risk - (bias + variance)| in units of the Monte-Carlo stderr. B_R and
/// V_R are exact given the test set, so mc_stderr is the whole uncertainty.
/// Returns 0 when both the gap and the stderr vanish.
double decomposition_zscore(const RiskReport& report);

}  // namespace benign::risk
