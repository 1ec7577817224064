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

#include "benign/numlin.hpp"

#include <algorithm>
#include <string>

#include "benign/errors.hpp"

namespace benign::numlin {

namespace {

constexpr double kSymmetryTol = 1e-8;

void require_symmetric(const Matrix& s) {
  require_finite(s, "sym_eig");
  require(s.rows() == s.cols(), "sym_eig: matrix must be square, got " +
                                    std::to_string(s.rows()) + "x" +
                                    std::to_string(s.cols()));
  const double asym = (s - s.transpose()).norm();
  require(asym <= kSymmetryTol * s.norm(),
          "sym_eig: input is not symmetric (||S - S^T||_F = " +
              std::to_string(asym) + ")");
}

}  // namespace

std::size_t SvdResult::rank(double rel_tol) const {
  if (singular_values.size() == 0) return 0;
  const double cutoff = rel_tol * singular_values(0);
  std::size_t r = 0;
  while (r < static_cast<std::size_t>(singular_values.size()) &&
         singular_values(static_cast<Eigen::Index>(r)) > cutoff) {
    ++r;
  }
  return r;
}

void require_finite(const Matrix& a, std::string_view what) {
  require(a.rows() >= 1 && a.cols() >= 1,
          std::string(what) + ": matrix must have at least one row and column");
  require(a.allFinite(), std::string(what) + ": matrix has non-finite entries");
}

double default_rel_tol(std::size_t rows, std::size_t cols) {
  return 1e-12 * static_cast<double>(std::max(rows, cols));
}

SvdResult svd(const Matrix& a) {
  require_finite(a, "svd");
  Eigen::BDCSVD<Matrix> solver(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("svd did not converge",
                         static_cast<std::size_t>(a.rows()),
                         static_cast<std::size_t>(a.cols()));
  }
  return SvdResult{solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

Matrix pinv(const Matrix& a, double rel_tol) {
  require(rel_tol > 0.0 && rel_tol < 1.0, "pinv: rel_tol must lie in (0, 1)");
  const SvdResult f = svd(a);
  const auto r = static_cast<Eigen::Index>(f.rank(rel_tol));
  if (r == 0) return Matrix::Zero(a.cols(), a.rows());
  const Vector inv = f.singular_values.head(r).cwiseInverse();
  return f.right.leftCols(r) * inv.asDiagonal() * f.left.leftCols(r).transpose();
}

SymEigResult sym_eig(const Matrix& s) {
  require_symmetric(s);
  const Matrix sym = 0.5 * (s + s.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("symmetric eigensolver did not converge",
                         static_cast<std::size_t>(s.rows()),
                         static_cast<std::size_t>(s.cols()));
  }
  // Eigen returns ascending order.
  return SymEigResult{solver.eigenvalues().reverse(),
                      solver.eigenvectors().rowwise().reverse()};
}

Vector sym_eigenvalues(const Matrix& s) {
  require_symmetric(s);
  const Matrix sym = 0.5 * (s + s.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("symmetric eigensolver did not converge",
                         static_cast<std::size_t>(s.rows()),
                         static_cast<std::size_t>(s.cols()));
  }
  return solver.eigenvalues().reverse();
}

double operator_norm(const Matrix& a) {
  require_finite(a, "operator_norm");
  Eigen::BDCSVD<Matrix> solver(a);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("svd did not converge",
                         static_cast<std::size_t>(a.rows()),
                         static_cast<std::size_t>(a.cols()));
  }
  return solver.singularValues()(0);
}

}  // namespace benign::numlin
