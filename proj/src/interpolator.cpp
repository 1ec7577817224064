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

#include "benign/interpolator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "benign/errors.hpp"

namespace benign::interp {

MnlsSolver::MnlsSolver(const Matrix& z, double rel_tol)
    : rows_(static_cast<std::size_t>(z.rows())),
      cols_(static_cast<std::size_t>(z.cols())),
      rel_tol_(rel_tol) {
  require(rel_tol > 0.0 && rel_tol < 1.0, "mnls: rel_tol must lie in (0, 1)");
  numlin::SvdResult f = numlin::svd(z);
  const auto r = static_cast<Eigen::Index>(f.rank(rel_tol));
  left_ = f.left.leftCols(r);
  sigma_ = f.singular_values.head(r);
  right_ = f.right.leftCols(r);
}

Vector MnlsSolver::solve(const Vector& y) const {
  require(static_cast<std::size_t>(y.size()) == rows_,
          "mnls: Y has length " + std::to_string(y.size()) + ", expected " +
              std::to_string(rows_));
  const Vector coeff = (left_.transpose() * y).cwiseQuotient(sigma_);
  return right_ * coeff;
}

Matrix MnlsSolver::solve_many(const Matrix& y) const {
  require(static_cast<std::size_t>(y.rows()) == rows_, "mnls: right-hand sides have wrong row count");
  const Matrix coeff = sigma_.cwiseInverse().asDiagonal() * (left_.transpose() * y);
  return right_ * coeff;
}

Vector MnlsSolver::project_row_space(const Vector& v) const {
  require(static_cast<std::size_t>(v.size()) == cols_, "mnls: vector length must equal column count");
  return right_ * (right_.transpose() * v);
}

MnlsEstimate mnls_fit(const Matrix& z, const Vector& y, double rel_tol) {
  require(z.rows() == y.size(), "mnls_fit: Z has " + std::to_string(z.rows()) +
                                    " rows but Y has length " + std::to_string(y.size()));
  const MnlsSolver solver(z, rel_tol);
  MnlsEstimate est;
  est.beta_tilde = solver.solve(y);
  est.rank = solver.rank();
  est.residual_norm = (z * est.beta_tilde - y).norm();
  return est;
}

std::string_view to_string(TargetConstruction c) {
  return c == TargetConstruction::unit_random ? "unit_random" : "first_coordinate";
}

TargetConstruction parse_target_construction(std::string_view text) {
  if (text == "unit_random") return TargetConstruction::unit_random;
  if (text == "first_coordinate") return TargetConstruction::first_coordinate;
  throw ContractError("target: expected unit_random|first_coordinate, got '" +
                      std::string(text) + "'");
}

TargetSpec make_target(std::size_t s, TargetConstruction construction, Rng& rng) {
  require(s >= 1, "make_target: s must be >= 1");
  TargetSpec t;
  t.construction = construction;
  if (construction == TargetConstruction::first_coordinate) {
    t.beta_star = Vector::Unit(static_cast<Eigen::Index>(s), 0);
  } else {
    Vector g = gaussian_matrix(static_cast<Eigen::Index>(s), 1, 1.0, rng).col(0);
    double nrm = g.norm();
    while (nrm == 0.0) {
      g = gaussian_matrix(static_cast<Eigen::Index>(s), 1, 1.0, rng).col(0);
      nrm = g.norm();
    }
    t.beta_star = g / nrm;
  }
  t.norm = t.beta_star.norm();
  return t;
}

double predict(const features::FeatureMap& map, const Vector& beta, const Vector& x) {
  require(static_cast<std::size_t>(beta.size()) == map.feature_count(),
          "predict: beta has length " + std::to_string(beta.size()) + ", expected " +
              std::to_string(map.feature_count()));
  return beta.dot(map.featurize(x));
}

double null_space_probe(const Matrix& z, const Vector& beta_tilde, std::size_t k_probes,
                        Rng& rng, double rel_tol) {
  require(z.cols() == beta_tilde.size(), "null_space_probe: beta length must equal column count");
  const MnlsSolver solver(z, rel_tol);
  if (solver.rank() == solver.cols() || k_probes == 0) return 0.0;
  const double base = beta_tilde.norm();
  const double scale = base > 0.0 ? base : 1.0;
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < k_probes; ++k) {
    const Vector g = gaussian_matrix(beta_tilde.size(), 1, 1.0, rng).col(0);
    Vector v = g - solver.project_row_space(g);
    const double vn = v.norm();
    if (vn == 0.0) continue;
    v *= scale / vn;
    worst = std::min(worst, (beta_tilde + v).norm() - base);
  }
  return std::isfinite(worst) ? worst : 0.0;
}

}  // namespace benign::interp
