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

#include "benign/relu_features.hpp"

#include <cmath>
#include <string>

#include "benign/errors.hpp"

namespace benign::features {

FeatureMap FeatureMap::sample(std::size_t s, std::size_t d, Rng& rng) {
  require(s >= 1, "sample_weights: s must be >= 1");
  return sample_with_variance(s, d, 1.0 / static_cast<double>(s), rng);
}

FeatureMap FeatureMap::sample_with_variance(std::size_t s, std::size_t d,
                                            double weight_variance, Rng& rng) {
  require(s >= 1 && d >= 1, "sample_weights: s and d must be >= 1");
  require(weight_variance > 0.0, "sample_weights: weight variance must be positive");
  Matrix w = gaussian_matrix(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(d),
                             std::sqrt(weight_variance), rng);
  return FeatureMap(std::move(w), weight_variance);
}

FeatureMap FeatureMap::from_weights(Matrix weights, double weight_variance) {
  numlin::require_finite(weights, "FeatureMap");
  return FeatureMap(std::move(weights), weight_variance);
}

Vector FeatureMap::featurize(const Vector& x) const {
  require(x.size() == weights_.cols(),
          "featurize: input has length " + std::to_string(x.size()) + ", expected " +
              std::to_string(weights_.cols()));
  return (weights_ * x).cwiseMax(0.0);
}

Vector FeatureMap::activation_mask(const Vector& x) const {
  require(x.size() == weights_.cols(),
          "activation_mask: input has length " + std::to_string(x.size()) + ", expected " +
              std::to_string(weights_.cols()));
  const Vector pre = weights_ * x;
  return (pre.array() > 0.0).cast<double>();
}

Matrix FeatureMap::feature_matrix(const Matrix& x_rows) const {
  require(x_rows.cols() == weights_.cols(),
          "feature_matrix: covariates have " + std::to_string(x_rows.cols()) +
              " columns, expected " + std::to_string(weights_.cols()));
  return (x_rows * weights_.transpose()).cwiseMax(0.0);
}

}  // namespace benign::features
