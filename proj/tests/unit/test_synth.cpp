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
#include "benign/synth.hpp"

namespace benign::synth {
namespace {

SpectrumSpec poly(std::size_t d, double gamma = 2.0) {
  return SpectrumSpec{SpectrumKind::polynomial, gamma, 1, d};
}

TEST(Spectrum, Examples) {
  const Vector p = make_spectrum(poly(3));
  EXPECT_DOUBLE_EQ(p(0), 1.0);
  EXPECT_DOUBLE_EQ(p(1), 0.25);
  EXPECT_DOUBLE_EQ(p(2), 1.0 / 9.0);

  const Vector f = make_spectrum({SpectrumKind::finite_rank, 2.0, 2, 4});
  EXPECT_EQ(f, (Vector(4) << 1, 1, 0, 0).finished());

  const Vector e = make_spectrum({SpectrumKind::exponential, 2.0, 1, 3});
  EXPECT_DOUBLE_EQ(e(0), 1.0);
  EXPECT_NEAR(e(1), std::exp(-1.0), 1e-16);
  EXPECT_NEAR(e(2), std::exp(-2.0), 1e-16);
}

TEST(Spectrum, Errors) {
  EXPECT_THROW(make_spectrum(poly(5, 1.0)), ContractError);
  EXPECT_THROW(make_spectrum(poly(5, 0.5)), ContractError);
  EXPECT_THROW(make_spectrum({SpectrumKind::finite_rank, 2.0, 6, 5}), ContractError);
  EXPECT_THROW(make_spectrum({SpectrumKind::finite_rank, 2.0, 0, 5}), ContractError);
}

TEST(Spectrum, DescendingForAllKinds) {
  for (const SpectrumSpec& s : {poly(50, 1.5), SpectrumSpec{SpectrumKind::exponential, 2, 1, 50},
                                SpectrumSpec{SpectrumKind::finite_rank, 2, 7, 50}}) {
    const Vector l = make_spectrum(s);
    for (Eigen::Index i = 1; i < l.size(); ++i) EXPECT_LE(l(i), l(i - 1));
  }
}

TEST(Spectrum, PolynomialTraceApproachesBaselSum) {
  const double target = std::numbers::pi * std::numbers::pi / 6.0;
  double prev_gap = 1.0;
  for (std::size_t d : {10u, 100u, 1000u, 100000u}) {
    const double gap = target - trace(make_spectrum(poly(d)));
    EXPECT_GT(gap, 0.0);
    EXPECT_LT(gap, prev_gap);
    EXPECT_NEAR(gap, 1.0 / static_cast<double>(d), 1.0 / static_cast<double>(d));
    prev_gap = gap;
  }
}

TEST(NoisySpectrum, Examples) {
  const Vector l = (Vector(2) << 1, 0.25).finished();
  const Vector n = noisy_spectrum(l, 0.01);
  EXPECT_DOUBLE_EQ(n(0), 1.01);
  EXPECT_DOUBLE_EQ(n(1), 0.26);
  EXPECT_EQ(noisy_spectrum(l, 0.0), l);
  EXPECT_THROW(noisy_spectrum(l, -0.1), ContractError);

  const NoiseSpec noise = NoiseSpec::from_zeta(1.0, 100);
  EXPECT_DOUBLE_EQ(noise.sigma_xi2, 0.01);
  EXPECT_NEAR(noisy_spectrum(make_spectrum(poly(100)), noise.sigma_xi2)(9), 0.02, 1e-15);
}

TEST(CeilPow, SnapsIntegralPowers) {
  EXPECT_EQ(ceil_pow(100, 0.5), 10u);
  EXPECT_EQ(ceil_pow(1000, 1.0 / 3.0), 10u);
  EXPECT_EQ(ceil_pow(101, 0.5), 11u);
  EXPECT_EQ(ceil_pow(100, 0.7), 26u);  // 100^0.7 = 25.12
}

TEST(DataModel, AlphaSetsDimension) {
  const DataModel m = DataModel::with_alpha(100, 0.5, poly(1), 1.0, 1.0);
  EXPECT_EQ(m.d, 10u);
  EXPECT_EQ(m.spectrum.d, 10u);
  EXPECT_DOUBLE_EQ(m.noise.sigma_xi2, 0.1);
  EXPECT_THROW(DataModel::with_alpha(100, 1.0, poly(1), 1.0, 1.0), ContractError);
  EXPECT_THROW(DataModel::with_alpha(100, 0.5, poly(1), 0.5, 1.0), ContractError);
}

TEST(Covariates, DegenerateSpectrumGivesZeros) {
  Rng rng(1);
  const auto [x, u] = sample_covariates(Vector::Zero(4), 20, CovariateDist::gaussian, rng);
  EXPECT_TRUE(x.isZero());
  EXPECT_FALSE(u.isZero());
}

TEST(Covariates, RademacherScalesBySqrtLambda) {
  Rng rng(2);
  const auto [x, u] = sample_covariates(Vector::Constant(1, 4.0), 200, CovariateDist::rademacher, rng);
  EXPECT_TRUE((x.array().abs() == 2.0).all());
}

TEST(Covariates, ColumnVariancesMatchSpectrum) {
  Rng rng(3);
  const Vector l = make_spectrum(poly(5));
  const auto [x, u] = sample_covariates(l, 10000, CovariateDist::gaussian, rng);
  EXPECT_TRUE(x.isApprox(u * l.cwiseSqrt().asDiagonal()));
  for (Eigen::Index j = 0; j < 5; ++j) {
    const double var = x.col(j).squaredNorm() / 10000.0;
    EXPECT_NEAR(var / l(j), 1.0, 0.05) << "column " << j;
  }
}

TEST(Covariates, SecondMomentGapShrinksLikeRootN) {
  const Vector l = make_spectrum(poly(5));
  std::vector<double> gaps;
  for (std::size_t n : {100u, 1000u, 10000u}) {
    double mean_gap = 0;
    for (int rep = 0; rep < 20; ++rep) {
      Rng rng(derive_stream(4, n, rep));
      const auto [x, u] = sample_covariates(l, n, CovariateDist::gaussian, rng);
      const Matrix emp = x.transpose() * x / static_cast<double>(n);
      mean_gap += (emp - Matrix(l.asDiagonal())).norm() / 20.0;
    }
    gaps.push_back(mean_gap);
  }
  const double slope = std::log(gaps[2] / gaps[0]) / std::log(100.0);
  EXPECT_NEAR(slope, -0.5, 0.1);
}

TEST(Noise, ZeroAndMoment) {
  Rng rng(5);
  EXPECT_TRUE(sample_covariate_noise(10, 4, 0.0, rng).isZero());
  const Matrix xi = sample_covariate_noise(1000, 100, 0.04, rng);
  const double var = xi.squaredNorm() / 1e5;
  EXPECT_NEAR(var / 0.04, 1.0, 0.03);
  EXPECT_THROW(sample_covariate_noise(2, 2, -1.0, rng), ContractError);
}

TEST(Labels, NoiselessAndMoments) {
  Rng rng(6);
  const Matrix z = gaussian_matrix(10000, 3, 1.0, rng);
  const Vector beta = (Vector(3) << 1, -2, 0.5).finished();
  const auto [y0, e0] = sample_labels(z, beta, 0.0, rng);
  EXPECT_EQ(y0, z * beta);

  const auto [y1, e1] = sample_labels(z, Vector::Zero(3), 1.0, rng);
  const double var = (y1.array() - y1.mean()).square().sum() / 9999.0;
  EXPECT_NEAR(var, 1.0, 0.05);

  const double sigma0 = 1.5;
  const auto [y2, e2] = sample_labels(z, beta, sigma0 * sigma0, rng);
  EXPECT_TRUE((y2 - z * beta).isApprox(e2));
  EXPECT_LE(std::abs((y2 - z * beta).mean()), 3.0 * sigma0 / 100.0);

  EXPECT_THROW(sample_labels(z, Vector::Zero(4), 1.0, rng), ContractError);
}

TEST(Reproducibility, SameSeedSameDraws) {
  const DataModel m = DataModel::with_alpha(64, 0.5, poly(1), 1.0, 1.0);
  Rng a(derive_stream(1, 2, 3)), b(derive_stream(1, 2, 3));
  const auto [xa, ua] = sample_covariates(m, a);
  const auto [xb, ub] = sample_covariates(m, b);
  EXPECT_EQ(xa, xb);
  EXPECT_EQ(sample_covariate_noise(m.n, m.d, m.noise.sigma_xi2, a),
            sample_covariate_noise(m.n, m.d, m.noise.sigma_xi2, b));
}

TEST(Parsing, NamesRoundTrip) {
  for (auto k : {SpectrumKind::polynomial, SpectrumKind::exponential, SpectrumKind::finite_rank})
    EXPECT_EQ(parse_spectrum_kind(to_string(k)), k);
  for (auto k : {CovariateDist::gaussian, CovariateDist::rademacher})
    EXPECT_EQ(parse_covariate_dist(to_string(k)), k);
  for (auto k : {LabelSource::noisy, LabelSource::clean}) EXPECT_EQ(parse_label_source(to_string(k)), k);
  EXPECT_THROW(parse_spectrum_kind("cubic"), ContractError);
}

}  // namespace
}  // namespace benign::synth
