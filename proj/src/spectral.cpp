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

#include "benign/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "benign/errors.hpp"

namespace benign::spectral {

namespace {

void require_descending_positive(const Vector& lambdas) {
  require(lambdas.size() >= 1, "k*: spectrum must be nonempty");
  for (Eigen::Index i = 0; i < lambdas.size(); ++i) {
    require(lambdas(i) > 0.0, "k*: noisy spectrum must be strictly positive");
    if (i > 0) require(lambdas(i) <= lambdas(i - 1), "k*: spectrum must be descending");
  }
}

}  // namespace

double tail_ratio(const Vector& lambdas_xi, std::size_t k) {
  require(k >= 1 && k <= static_cast<std::size_t>(lambdas_xi.size()), "tail_ratio: k out of range");
  const auto idx = static_cast<Eigen::Index>(k);
  return lambdas_xi.tail(lambdas_xi.size() - idx).sum() / lambdas_xi(idx - 1);
}

KstarResult find_kstar(const Vector& lambdas_xi, double b,
                       std::optional<std::size_t> analytic_prediction) {
  require(b > 1.0, "find_kstar: b must exceed 1");
  require_descending_positive(lambdas_xi);
  const Eigen::Index d = lambdas_xi.size();
  const double target = static_cast<double>(d) / b;

  // tail[k] = sum_{i > k} lambda_i (0-based k), filled back to front.
  std::vector<double> tail(static_cast<std::size_t>(d), 0.0);
  for (Eigen::Index k = d - 2; k >= 0; --k)
    tail[static_cast<std::size_t>(k)] = tail[static_cast<std::size_t>(k + 1)] + lambdas_xi(k + 1);

  KstarResult out;
  out.b = b;
  out.analytic_prediction = analytic_prediction;
  out.tail_ratio_at_kstar = std::numeric_limits<double>::quiet_NaN();
  for (Eigen::Index k = 0; k < d; ++k) {
    const double ratio = tail[static_cast<std::size_t>(k)] / lambdas_xi(k);
    if (ratio >= target) {
      out.kstar = static_cast<std::size_t>(k + 1);
      out.tail_ratio_at_kstar = ratio;
      break;
    }
  }
  return out;
}

std::size_t analytic_kstar(const synth::SpectrumSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case synth::SpectrumKind::finite_rank:
      return spec.rank;
    case synth::SpectrumKind::exponential:
      return static_cast<std::size_t>(std::ceil(std::log(static_cast<double>(spec.d)))) + 1;
    case synth::SpectrumKind::polynomial:
      return synth::ceil_pow(spec.d, 1.0 / spec.gamma);
  }
  return 1;
}

std::string_view to_string(BiasCase c) {
  switch (c) {
    case BiasCase::B1: return "B1";
    case BiasCase::B2: return "B2";
    case BiasCase::B3: return "B3";
  }
  return "?";
}

double bias_zeta_threshold(double alpha) { return 4.0 - 2.0 / alpha; }

RegimeLabel classify_regime(double alpha, double gamma, double zeta, double kappa,
                            synth::SpectrumKind scenario) {
  require(alpha > 0.0 && alpha < 1.0, "classify_regime: alpha must lie in (0, 1)");
  require(gamma > 1.0, "classify_regime: gamma must exceed 1");
  require(zeta >= 1.0, "classify_regime: zeta must be >= 1");
  require(std::isfinite(kappa) && kappa > 0.0, "classify_regime: kappa must be positive");
  RegimeLabel label;
  label.scenario = scenario;
  label.variance_converges = kappa < 1.0 + alpha;
  if (alpha <= 0.5) {
    label.bias_case = BiasCase::B1;
    label.bias_converges = true;
  } else if (zeta >= 2.0) {
    label.bias_case = BiasCase::B2;
    label.bias_converges = true;
  } else {
    label.bias_case = BiasCase::B3;
    label.bias_converges = zeta > bias_zeta_threshold(alpha);
  }
  return label;
}

BoundSheet bound_sheet(double sigma0_sq, double trace_sigma, std::size_t s, std::size_t n,
                       std::size_t d, double sigma_xi, double delta, double c) {
  require(sigma0_sq >= 0.0 && trace_sigma >= 0.0, "bound_sheet: variances must be nonnegative");
  require(s >= 1 && n >= 1 && d >= 1, "bound_sheet: s, n, d must be positive");
  require(sigma_xi >= 0.0, "bound_sheet: sigma_xi must be nonnegative");
  require(delta > 0.0 && delta < 1.0, "bound_sheet: delta must lie in (0, 1)");
  require(c > 0.0, "bound_sheet: c must be positive");
  const double sd = static_cast<double>(s);
  const double nd = static_cast<double>(n);
  const double dd = static_cast<double>(d);
  const double shape = sigma0_sq * trace_sigma * sd / (nd * dd);
  BoundSheet sheet;
  sheet.v_upper = c * shape;
  sheet.v_lower = shape / c;
  sheet.b_upper = c * (std::sqrt(std::log(sd / delta) / nd) + dd * dd * sigma_xi / nd);
  sheet.delta = delta;
  sheet.c = c;
  return sheet;
}

RateFit rate_fit(std::span<const RatePoint> points, double min_span_ratio) {
  require(points.size() >= 4, "rate_fit: need at least 4 points");
  std::vector<double> xs;
  std::vector<double> ys;
  xs.reserve(points.size());
  ys.reserve(points.size());
  for (const RatePoint& p : points) {
    require(p.value > 0.0 && std::isfinite(p.value), "rate_fit: values must be positive and finite");
    require(p.s >= 1 && p.n >= 1 && p.d >= 1, "rate_fit: s, n, d must be positive");
    xs.push_back(std::log(static_cast<double>(p.s) /
                          (static_cast<double>(p.n) * static_cast<double>(p.d))));
    ys.push_back(std::log(p.value));
  }
  const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  require(*hi - *lo >= std::log(min_span_ratio),
          "rate_fit: s/(nd) spans a factor of " + std::to_string(std::exp(*hi - *lo)) +
              ", need at least " + std::to_string(min_span_ratio));
  require(*hi > *lo, "rate_fit: degenerate span");

  const double k = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= k;
  my /= k;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  RateFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

}  // namespace benign::spectral
