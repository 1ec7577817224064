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

// Dense linear-algebra substrate. Everything here is a pure function of its
// arguments and runs in double precision.

#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <string_view>

namespace benign::numlin {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Thin SVD, A = left * diag(singular_values) * right^T, values descending.
struct SvdResult {
  Matrix left;
  Vector singular_values;
  Matrix right;

  /// Number of singular values strictly above rel_tol * sigma_max.
  std::size_t rank(double rel_tol) const;
};

struct SymEigResult {
  Vector eigenvalues;  // descending
  Matrix eigenvectors;  // column i pairs with eigenvalues(i)
};

/// Throws ContractError when A is empty or holds a NaN/Inf entry.
void require_finite(const Matrix& a, std::string_view what);

/// Default pseudoinverse cutoff: 1e-12 * max(rows, cols).
double default_rel_tol(std::size_t rows, std::size_t cols);

SvdResult svd(const Matrix& a);

/// Moore-Penrose pseudoinverse; singular values at or below
/// rel_tol * sigma_max are treated as zero.
Matrix pinv(const Matrix& a, double rel_tol);

/// Symmetric eigendecomposition. Rejects inputs with
/// ||S - S^T||_F > 1e-8 ||S||_F.
SymEigResult sym_eig(const Matrix& s);

/// Eigenvalues only, descending. Same contract as sym_eig.
Vector sym_eigenvalues(const Matrix& s);

/// Largest singular value.
double operator_norm(const Matrix& a);

}  // namespace benign::numlin
