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

#pragma once

#include <cstddef>

#include "benign/numlin.hpp"
#include "benign/rng.hpp"

namespace benign::features {

using numlin::Matrix;
using numlin::Vector;

/// Frozen first layer of a two-layer ReLU network, z_x = max(0, W x).
class FeatureMap {
 public:
  /// W with i.i.d. N(0, 1/s) entries.
  static FeatureMap sample(std::size_t s, std::size_t d, Rng& rng);
  /// W with i.i.d. N(0, weight_variance) entries.
  static FeatureMap sample_with_variance(std::size_t s, std::size_t d,
                                         double weight_variance, Rng& rng);
  /// Wraps explicit weights; weight_variance is recorded as given.
  static FeatureMap from_weights(Matrix weights, double weight_variance);

  std::size_t feature_count() const { return static_cast<std::size_t>(weights_.rows()); }
  std::size_t input_dim() const { return static_cast<std::size_t>(weights_.cols()); }
  double weight_variance() const { return weight_variance_; }
  const Matrix& weights() const { return weights_; }

  /// max(0, W x), entrywise.
  Vector featurize(const Vector& x) const;

  /// Diagonal of D_x: entry i is 1 iff w_i^T x > 0 (strict).
  Vector activation_mask(const Vector& x) const;

  /// n x s matrix whose row i is featurize(row i of x_rows).
  Matrix feature_matrix(const Matrix& x_rows) const;

 private:
  FeatureMap(Matrix weights, double weight_variance)
      : weights_(std::move(weights)), weight_variance_(weight_variance) {}

  Matrix weights_;
  double weight_variance_;
};

}  // namespace benign::features
