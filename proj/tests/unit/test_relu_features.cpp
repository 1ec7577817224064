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


#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "benign/errors.hpp"
#include "benign/relu_features.hpp"

namespace benign::features {
namespace {

TEST(Featurize, IdentityWeights) {
  const FeatureMap map = FeatureMap::from_weights(Matrix::Identity(2, 2), 1.0);
  EXPECT_EQ(map.featurize((Vector(2) << 1, -1).finished()), (Vector(2) << 1, 0).finished());
  EXPECT_TRUE(map.featurize(Vector::Zero(2)).isZero());
  EXPECT_TRUE(map.activation_mask(Vector::Zero(2)).isZero());
  EXPECT_THROW(map.featurize(Vector::Zero(3)), ContractError);
}

TEST(Featurize, MaskIdentityAndHomogeneity) {
  Rng rng(1);
  const FeatureMap map = FeatureMap::sample(300, 7, rng);
  for (int k = 0; k < 20; ++k) {
    const Vector x = gaussian_matrix(7, 1, 1.0, rng).col(0);
    const Vector z = map.featurize(x);
    const Vector wx = map.weights() * x;
    EXPECT_EQ(z, Vector(map.activation_mask(x).cwiseProduct(wx)));
    EXPECT_GE(z.minCoeff(), 0.0);
    for (double c : {0.5, 2.0, 1024.0}) EXPECT_EQ(map.featurize(c * x), Vector(c * z));
  }
}

TEST(Featurize, WeightVarianceIsOneOverS) {
  Rng rng(2);
  const FeatureMap one = FeatureMap::sample(1, 3, rng);
  EXPECT_DOUBLE_EQ(one.weight_variance(), 1.0);
  const FeatureMap many = FeatureMap::sample(2000, 50, rng);
  EXPECT_DOUBLE_EQ(many.weight_variance(), 1.0 / 2000.0);
  const double emp = many.weights().squaredNorm() / (2000.0 * 50.0);
  EXPECT_NEAR(emp * 2000.0, 1.0, 0.02);
}

TEST(Featurize, MomentLaw) {
  // z_i = max(0, g) with g ~ N(0, sw^2 |x|^2): mean sw|x|/sqrt(2 pi),
  // variance (sw^2 |x|^2 / 2)(1 - 1/pi).
  Rng rng(3);
  const std::size_t s = 100000;
  const FeatureMap map = FeatureMap::sample(s, 4, rng);
  const Vector x = (Vector(4) << 0.5, -0.5, 0.5, 0.5).finished();  // unit norm
  const Vector z = map.featurize(x);
  const double sw = std::sqrt(map.weight_variance());
  const double mean = sw / std::sqrt(2.0 * std::numbers::pi);
  const double var = sw * sw / 2.0 * (1.0 - 1.0 / std::numbers::pi);
  const double m = z.mean();
  EXPECT_NEAR(m / mean, 1.0, 0.01);
  EXPECT_NEAR(((z.array() - m).square().sum() / (s - 1.0)) / var, 1.0, 0.02);
}

TEST(Mask, HalfActiveOnAverage) {
  Rng rng(4);
  const FeatureMap map = FeatureMap::sample(10000, 5, rng);
  const Vector x = gaussian_matrix(5, 1, 1.0, rng).col(0);
  EXPECT_NEAR(map.activation_mask(x).mean(), 0.5, 0.02);
}

TEST(Mask, StrictInequalityOnTies) {
  Matrix w(2, 2);
  w << 1, -1, 1, 1;
  const FeatureMap map = FeatureMap::from_weights(w, 1.0);
  const Vector mask = map.activation_mask((Vector(2) << 1, 1).finished());
  EXPECT_EQ(mask(0), 0.0);  // w_1^T x == 0
  EXPECT_EQ(mask(1), 1.0);
}

TEST(FeatureMatrix, RowsMatchFeaturize) {
  Rng rng(5);
  const FeatureMap map = FeatureMap::sample(40, 6, rng);
  const Matrix x = gaussian_matrix(15, 6, 1.0, rng);
  const Matrix z = map.feature_matrix(x);
  ASSERT_EQ(z.rows(), 15);
  ASSERT_EQ(z.cols(), 40);
  for (Eigen::Index i = 0; i < 15; ++i)
    EXPECT_TRUE(z.row(i).transpose().isApprox(map.featurize(x.row(i).transpose()), 1e-14));
  EXPECT_THROW(map.feature_matrix(Matrix::Zero(3, 5)), ContractError);
}

TEST(FeatureMatrix, NoisePerturbationIsLipschitz) {
  // |relu(a + b) - relu(a)| <= |b| <= 2|b|, entry by entry
  Rng rng(6);
  const FeatureMap map = FeatureMap::sample(100, 10, rng);
  const Matrix x = gaussian_matrix(100, 10, 1.0, rng);
  const Matrix xi = gaussian_matrix(100, 10, 0.3, rng);
  const Matrix dz = (map.feature_matrix(x + xi) - map.feature_matrix(x)).cwiseAbs();
  const Matrix wxi = (xi * map.weights().transpose()).cwiseAbs();
  EXPECT_TRUE((dz.array() <= 2.0 * wxi.array() + 1e-15).all());
}

}  // namespace
}  // namespace benign::features
