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

// Minimum-norm least-squares (MNLS) fit
//
//   beta = argmin ||beta||  subject to  ||Z beta - Y|| = min_theta ||Z theta - Y||,
//
// i.e. beta = Z^T (Z Z^T)^+ Y = (Z^T Z)^+ Z^T Y. Both forms are evaluated
// through one thin SVD of Z; Z^T Z is never formed.

#pragma once

#include <cstddef>
#include <string_view>

#include "benign/numlin.hpp"
#include "benign/relu_features.hpp"
#include "benign/rng.hpp"

namespace benign::interp {

using numlin::Matrix;
using numlin::Vector;

/// Truncated SVD of a design matrix, reusable across many right-hand sides.
class MnlsSolver {
 public:
  MnlsSolver(const Matrix& z, double rel_tol);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return static_cast<std::size_t>(sigma_.size()); }
  double rel_tol() const { return rel_tol_; }

  /// Retained factors: Z ~= left * diag(sigma) * right^T with sigma > cutoff.
  const Matrix& left() const { return left_; }
  const Vector& sigma() const { return sigma_; }
  const Matrix& right() const { return right_; }

  /// Z^+ y.
  Vector solve(const Vector& y) const;
  /// Z^+ Y, column by column.
  Matrix solve_many(const Matrix& y) const;

  /// Orthogonal projection of v onto the row space of Z.
  Vector project_row_space(const Vector& v) const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  double rel_tol_;
  Matrix left_;
  Vector sigma_;
  Matrix right_;
};

struct MnlsEstimate {
  Vector beta_tilde;
  std::size_t rank = 0;
  double residual_norm = 0.0;
};

MnlsEstimate mnls_fit(const Matrix& z, const Vector& y, double rel_tol);

enum class TargetConstruction { unit_random, first_coordinate };

std::string_view to_string(TargetConstruction c);
TargetConstruction parse_target_construction(std::string_view text);

/// beta_* (== beta_H under the well-specified convention).
struct TargetSpec {
  Vector beta_star;
  TargetConstruction construction = TargetConstruction::unit_random;
  double norm = 1.0;
};

/// unit_random: uniform on the unit sphere of R^s; first_coordinate: e_1.
TargetSpec make_target(std::size_t s, TargetConstruction construction, Rng& rng);

/// beta^T max(0, W x).
double predict(const features::FeatureMap& map, const Vector& beta, const Vector& x);

/// Draws k_probes random vectors v in null(Z) and returns
/// min_v (||beta + v|| - ||beta||). Nonnegative (up to rounding) exactly when
/// beta is orthogonal to null(Z). Returns 0 when null(Z) is trivial.
double null_space_probe(const Matrix& z, const Vector& beta_tilde, std::size_t k_probes,
                        Rng& rng, double rel_tol);

}  // namespace benign::interp
