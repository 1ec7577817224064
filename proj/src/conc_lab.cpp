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


#include "benign/conc_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include <Eigen/QR>

#include "benign/errors.hpp"
#include "benign/parallel.hpp"

namespace benign::conc {

namespace {

struct Outcome {
  double statistic = 0.0;
  double shape = 0.0;
};

double ratio_of(const Outcome& o) {
  if (o.shape > 0.0) return o.statistic / o.shape;
  return o.statistic > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
}

NamedCheck relative_check(std::string name, double measured, double expected, double tol) {
  NamedCheck c;
  c.name = std::move(name);
  c.measured = measured;
  c.expected = expected;
  c.rel_err = std::abs(measured - expected) / std::abs(expected);
  c.passed = c.rel_err <= tol;
  return c;
}

NamedCheck cap_check(std::string name, double measured, double cap) {
  NamedCheck c;
  c.name = std::move(name);
  c.measured = measured;
  c.expected = cap;
  c.rel_err = std::abs(measured - cap) / std::abs(cap);
  c.passed = measured <= cap;
  return c;
}

// Runs `trial` on two independent batches with per-trial RNG streams, fits
// the constant on the first and validates it on the second.
template <typename Trial>
ConcReport run_fitted(std::string lemma_id, double rate, std::size_t trials, Rng& rng,
                      std::size_t workers, Trial&& trial) {
  require(trials >= 1, lemma_id + ": trials must be >= 1");
  const std::uint64_t base = rng();
  auto batch = [&](std::uint64_t index) {
    std::vector<Outcome> out(trials);
    parallel_for(trials, workers, [&](std::size_t k) {
      Rng r(derive_stream(base, index, k));
      out[k] = trial(r);
    });
    return out;
  };
  const std::vector<Outcome> train = batch(0);
  const std::vector<Outcome> valid = batch(1);

  auto ratios = [](const std::vector<Outcome>& v) {
    std::vector<double> r;
    r.reserve(v.size());
    for (const Outcome& o : v) r.push_back(ratio_of(o));
    return r;
  };

  ConcReport rep;
  rep.lemma_id = std::move(lemma_id);
  rep.trials = trials;
  rep.theoretical_rate = rate;
  rep.fitted_constant = fit_constant(ratios(train), rate);
  rep.validation_constant = fit_constant(ratios(valid), rate);
  rep.envelope_values.reserve(trials);
  for (const Outcome& o : valid)
    rep.envelope_values.push_back({o.statistic, o.shape, rep.fitted_constant * o.shape});
  rep.empirical_violation_rate = violation_rate(rep.envelope_values, rep.fitted_constant);
  return rep;
}

void require_rate(double t, const std::string& who) {
  require(t > 0.0 && std::isfinite(t), who + ": t must be positive");
}

void require_model(const CovarianceModel& model, const features::FeatureMap& map,
                   const std::string& who) {
  require(model.lambdas.size() >= 1, who + ": empty spectrum");
  require((model.lambdas.array() >= 0.0).all(), who + ": eigenvalues must be nonnegative");
  require(model.sigma_xi2 >= 0.0, who + ": sigma_xi2 must be >= 0");
  require(static_cast<Eigen::Index>(map.input_dim()) == model.lambdas.size(),
          who + ": feature map input dimension does not match the spectrum");
}

double max_abs_eigenvalue(const Matrix& sym) {
  const Vector ev = numlin::sym_eigenvalues(sym);
  return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

// ||B M B^T|| for B with full column rank, via B = QR.
double sandwiched_norm(const Matrix& b, const Matrix& m) {
  Eigen::HouseholderQR<Matrix> qr(b);
  const Eigen::Index k = b.cols();
  const Matrix r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  return max_abs_eigenvalue(r * m * r.transpose());
}

Matrix relu(const Matrix& a) { return a.cwiseMax(0.0); }

}  // namespace

double ConcReport::constant_ratio() const {
  const double hi = std::max(fitted_constant, validation_constant);
  const double lo = std::min(fitted_constant, validation_constant);
  return hi / lo;
}

double fit_constant(std::vector<double> ratios, double rate) {
  require(!ratios.empty(), "fit_constant: no samples");
  require(rate > 0.0 && rate < 1.0, "fit_constant: rate must lie in (0, 1)");
  std::sort(ratios.begin(), ratios.end());
  const std::size_t n = ratios.size();
  const double expected_exceed = rate * static_cast<double>(n);
  double c;
  if (expected_exceed >= 10.0) {
    const auto allowed = static_cast<std::size_t>(std::floor(expected_exceed));
    c = ratios[n - 1 - std::min(allowed, n - 1)];
  } else {
    // Peaks over threshold: exceedances over the (1 - k/n) quantile are taken
    // as exponential with the mean excess as scale.
    const std::size_t k = std::min(
        n - 1, std::max<std::size_t>(10, static_cast<std::size_t>(std::ceil(0.05 * n))));
    if (k == 0) {
      c = ratios.back();
    } else {
      const double u = ratios[n - 1 - k];
      double excess = 0.0;
      for (std::size_t i = n - k; i < n; ++i) excess += ratios[i] - u;
      excess /= static_cast<double>(k);
      const double p_u = static_cast<double>(k) / static_cast<double>(n);
      c = std::max(u + excess * std::log(p_u / rate), ratios.back());
    }
  }
  return std::max(c, std::numeric_limits<double>::min());
}

double violation_rate(const std::vector<EnvelopePoint>& points, double c) {
  if (points.empty()) return 0.0;
  std::size_t bad = 0;
  for (const EnvelopePoint& p : points)
    if (p.statistic > c * p.shape) ++bad;
  return static_cast<double>(bad) / static_cast<double>(points.size());
}

CovarianceModel CovarianceModel::from(const synth::DataModel& model) {
  model.validate();
  CovarianceModel m;
  m.lambdas = synth::make_spectrum(model.spectrum);
  m.sigma_xi2 = model.noise.sigma_xi2;
  m.dist = model.covariate_dist;
  return m;
}

ConcReport test_relu_moments(double sigma_w, double x_norm, std::size_t m, Rng& rng) {
  require(m >= 1000, "relu_moments: m must be >= 1000");
  require(sigma_w > 0.0 && x_norm > 0.0, "relu_moments: sigma_w and ||x|| must be positive");
  constexpr Eigen::Index dim = 4;
  const Vector x = Vector::Constant(dim, x_norm / std::sqrt(static_cast<double>(dim)));
  const Matrix w = gaussian_matrix(static_cast<Eigen::Index>(m), dim, sigma_w, rng);
  const Vector z = (w * x).cwiseMax(0.0);

  const double md = static_cast<double>(m);
  const double mean = z.mean();
  const double var = (z.array() - mean).square().sum() / (md - 1.0);
  const double zero_frac = static_cast<double>((z.array() == 0.0).count()) / md;

  const double sigma2 = sigma_w * sigma_w * x_norm * x_norm;
  ConcReport rep;
  rep.lemma_id = "relu_moments";
  rep.trials = m;
  rep.checks.push_back(relative_check(
      "mean", mean, std::sqrt(sigma2 / (2.0 * std::numbers::pi)), 0.02));
  rep.checks.push_back(
      relative_check("variance", var, 0.5 * sigma2 * (1.0 - 1.0 / std::numbers::pi), 0.02));
  rep.checks.push_back(relative_check("zero_atom", zero_frac, 0.5, 0.02));
  return rep;
}

ConcReport test_subexp_sum(const Vector& lambdas, double t, std::size_t trials, Rng& rng,
                           std::size_t workers) {
  require_rate(t, "subexp_sum");
  require(lambdas.size() >= 1 && (lambdas.array() >= 0.0).all(),
          "subexp_sum: weights must be nonempty and nonnegative");
  const double lam1 = lambdas.cwiseAbs().maxCoeff();
  const double shape = std::max(lam1 * t, std::sqrt(t * lambdas.squaredNorm()));
  return run_fitted("subexp_sum", 2.0 * std::exp(-t), trials, rng, workers, [&](Rng& r) {
    const Vector g = gaussian_matrix(lambdas.size(), 1, 1.0, r).col(0);
    const double sum = lambdas.dot((g.array().square() - 1.0).matrix());
    return Outcome{std::abs(sum), shape};
  });
}

ConcReport test_norm_concentration(double mu, double sigma, std::size_t n, double t,
                                   std::size_t trials, Rng& rng, std::size_t workers) {
  require_rate(t, "norm_concentration");
  require(n >= 1, "norm_concentration: n must be >= 1");
  require(sigma >= 0.0 && std::isfinite(mu), "norm_concentration: need finite mu, sigma >= 0");
  const double nd = static_cast<double>(n);
  const double center = nd * (mu * mu + sigma * sigma);
  const double shape = sigma * sigma * (t + std::sqrt(nd * t));
  ConcReport rep = run_fitted("norm_concentration", 2.0 * std::exp(-t), trials, rng, workers,
                              [&](Rng& r) {
                                // u_i^2 - mu^2 - sigma^2 written as e (2 mu + e) - sigma^2
                                // with e = sigma g, so sigma = 0 gives exactly 0
                                const Vector e =
                                    gaussian_matrix(static_cast<Eigen::Index>(n), 1, sigma, r).col(0);
                                const double dev =
                                    (e.array() * (2.0 * mu + e.array()) - sigma * sigma).sum();
                                return Outcome{std::abs(dev), shape};
                              });
  // The envelope is symmetric about n(mu^2 + sigma^2); compare with the
  // sample mean of ||u||^2 over a fresh batch.
  double mean = 0.0;
  for (std::size_t k = 0; k < trials; ++k) {
    const Vector u =
        (gaussian_matrix(static_cast<Eigen::Index>(n), 1, sigma, rng).col(0).array() + mu).matrix();
    mean += u.squaredNorm();
  }
  mean /= static_cast<double>(trials);
  if (center > 0.0) rep.checks.push_back(relative_check("midpoint", mean, center, 0.01));
  return rep;
}

ConcReport test_eigen_bounds(const Vector& lambdas, std::size_t s, double t, std::size_t trials,
                             Rng& rng, std::size_t workers) {
  require_rate(t, "eigen_bounds");
  require(s >= 1 && lambdas.size() >= 1, "eigen_bounds: empty shape");
  require((lambdas.array() >= 0.0).all(), "eigen_bounds: weights must be nonnegative");
  const auto d = lambdas.size();
  const auto si = static_cast<Eigen::Index>(s);
  const Eigen::Index big_n = std::min(si, d);
  require(big_n <= 200, "eigen_bounds: min(s, d) must be <= 200");
  Vector sorted = lambdas;
  std::sort(sorted.data(), sorted.data() + d, std::greater<>());
  const Vector head = sorted.head(big_n);
  const double total = head.sum();
  const double big_t = t + static_cast<double>(big_n) * std::log(9.0);
  const double shape = sorted(0) * big_t + std::sqrt(big_t * head.squaredNorm());
  const Vector root = lambdas.cwiseSqrt();

  ConcReport rep = run_fitted("eigen_bounds", 2.0 * std::exp(-t), trials, rng, workers,
                              [&](Rng& r) {
    // A = B^T B with B = diag(sqrt(lambda)) W, W d x s. Its nonzero spectrum
    // is that of the smaller Gram matrix.
    const Matrix b = root.asDiagonal() * gaussian_matrix(d, si, 1.0, r);
    const Matrix gram = d <= si ? Matrix(b * b.transpose()) : Matrix(b.transpose() * b);
    const Vector ev = numlin::sym_eigenvalues(gram);
    const double mu1 = ev(0);
    const double mun = ev(big_n - 1);
    return Outcome{std::max(std::abs(mu1 - total), std::abs(mun - total)), shape};
  });

  // E Tr(A) = sum_i lambda_i E||w_i||^2 = s sum_i lambda_i.
  double tr = 0.0;
  const std::size_t k_tr = std::min<std::size_t>(trials, 500);
  for (std::size_t k = 0; k < k_tr; ++k) {
    const Matrix w = gaussian_matrix(d, si, 1.0, rng);
    tr += lambdas.dot(w.rowwise().squaredNorm());
  }
  tr /= static_cast<double>(k_tr);
  rep.checks.push_back(
      relative_check("trace_mean", tr, static_cast<double>(s) * lambdas.sum(), 0.05));
  return rep;
}

ConcReport test_matrix_bernstein(const CovarianceModel& model, const features::FeatureMap& map,
                                 std::size_t n, double delta, std::size_t trials, Rng& rng,
                                 std::size_t workers, std::size_t reference_samples) {
  require_model(model, map, "matrix_bernstein");
  require(map.feature_count() <= 500, "matrix_bernstein: s must be <= 500");
  require(n >= 1 && reference_samples >= 1, "matrix_bernstein: sample sizes must be positive");
  require(delta > 0.0 && delta < 1.0, "matrix_bernstein: delta must lie in (0, 1)");
  const auto s = static_cast<Eigen::Index>(map.feature_count());

  // Oracle for E[z z^T]: a large independent average, accumulated in chunks.
  Matrix reference = Matrix::Zero(s, s);
  constexpr std::size_t chunk = 10000;
  for (std::size_t done = 0; done < reference_samples; done += chunk) {
    const std::size_t rows = std::min(chunk, reference_samples - done);
    const Matrix z = map.feature_matrix(
        synth::sample_covariates(model.lambdas, rows, model.dist, rng).first);
    reference.selfadjointView<Eigen::Lower>().rankUpdate(z.transpose());
  }
  reference = Matrix(reference.selfadjointView<Eigen::Lower>()) /
              static_cast<double>(reference_samples);

  const double nd = static_cast<double>(n);
  const double shape = std::sqrt(std::log(static_cast<double>(s) / delta) / nd);
  return run_fitted("matrix_bernstein", delta, trials, rng, workers, [&](Rng& r) {
    const Matrix z =
        map.feature_matrix(synth::sample_covariates(model.lambdas, n, model.dist, r).first);
    const Matrix gap = z.transpose() * z / nd - reference;
    return Outcome{max_abs_eigenvalue(gap), shape};
  });
}

ConcReport test_design_gap(const CovarianceModel& model, const features::FeatureMap& map,
                           std::size_t n, std::size_t trials, Rng& rng, std::size_t workers) {
  require_model(model, map, "design_gap");
  require(map.feature_count() <= 500, "design_gap: s must be <= 500");
  const auto d = model.lambdas.size();
  const auto s = static_cast<Eigen::Index>(map.feature_count());
  require(static_cast<Eigen::Index>(n) > d, "design_gap: need n > d");
  const double sw2 = map.weight_variance();
  const Vector lam_xi = (model.lambdas.array() + model.sigma_xi2).matrix();
  const Matrix& w = map.weights();
  const Matrix population = w * lam_xi.asDiagonal() * w.transpose();
  const double dd = static_cast<double>(d);

  auto gap_at = [&](std::size_t rows, Rng& r) {
    const Matrix x = synth::sample_covariates(model.lambdas, rows, model.dist, r).first;
    const Matrix xi = synth::sample_covariate_noise(rows, static_cast<std::size_t>(d),
                                                    model.sigma_xi2, r);
    const Matrix z = map.feature_matrix(x + xi);
    return max_abs_eigenvalue(z.transpose() * z / static_cast<double>(rows) - population);
  };
  const double shape = std::sqrt(dd / static_cast<double>(n)) * dd * sw2;
  ConcReport rep = run_fitted("design_gap", kNominalRate, trials, rng, workers,
                              [&](Rng& r) { return Outcome{gap_at(n, r), shape}; });

  // Sampling term alone; it carries the sqrt(d/n) behaviour.
  const std::size_t k_scale = std::min<std::size_t>(trials, 200);
  const Matrix b = w * lam_xi.cwiseSqrt().asDiagonal();
  auto sampling_mean = [&](std::size_t rows) {
    double acc = 0.0;
    for (std::size_t k = 0; k < k_scale; ++k) {
      const Matrix u = gaussian_matrix(static_cast<Eigen::Index>(rows), d, 1.0, rng);
      const Matrix m = u.transpose() * u / static_cast<double>(rows) - Matrix::Identity(d, d);
      acc += d <= s ? sandwiched_norm(b, m) : max_abs_eigenvalue(b * m * b.transpose());
    }
    return acc / static_cast<double>(k_scale);
  };
  if (lam_xi.maxCoeff() > 0.0) {
    const double s1 = sampling_mean(n);
    const double s4 = sampling_mean(4 * n);
    rep.checks.push_back(relative_check("sampling_term_halving", s4 / s1, 0.5, 0.25));

    // Full gap at n vs 4n, reported as measured.
    const std::size_t k_raw = std::min<std::size_t>(trials, 50);
    double g1 = 0.0, g4 = 0.0;
    for (std::size_t k = 0; k < k_raw; ++k) {
      g1 += gap_at(n, rng);
      g4 += gap_at(4 * n, rng);
    }
    NamedCheck raw = relative_check("full_gap_halving", g4 / g1, 0.5, 0.25);
    rep.checks.push_back(raw);
  }

  // Lower envelope of the population matrix over fresh weights.
  if (d <= s && lam_xi.minCoeff() > 0.0) {
    std::vector<double> scaled(trials);
    const Vector root = lam_xi.cwiseSqrt();
    for (std::size_t k = 0; k < trials; ++k) {
      const Matrix wk = gaussian_matrix(s, d, std::sqrt(sw2), rng);
      const Matrix gram = root.asDiagonal() * (wk.transpose() * wk) * root.asDiagonal();
      const Vector ev = numlin::sym_eigenvalues(gram);
      scaled[k] = ev(d - 1) / (dd * sw2);
    }
    std::sort(scaled.begin(), scaled.end());
    const double q05 = scaled[static_cast<std::size_t>(std::floor(0.05 * static_cast<double>(trials)))];
    rep.checks.push_back(cap_check("mu_min_b4", 1.0 / q05, 10.0));
  }
  return rep;
}

ConcReport test_deltaz_bound(const CovarianceModel& model, const features::FeatureMap& map,
                             std::size_t n, std::size_t trials, Rng& rng, std::size_t workers) {
  require_model(model, map, "deltaz_bound");
  require(n >= 1, "deltaz_bound: n must be >= 1");
  const auto d = static_cast<std::size_t>(model.lambdas.size());
  const double nd = static_cast<double>(n);
  const double dd = static_cast<double>(d);
  const double sigma_xi = std::sqrt(model.sigma_xi2);
  const double shape = dd * dd * sigma_xi / nd;
  const Matrix& w = map.weights();

  auto norm_for = [&](const Matrix& x, const Matrix& xi) {
    const Matrix z = relu(x * w.transpose());
    const Matrix dz = z - relu((x + xi) * w.transpose());
    return numlin::operator_norm(dz.transpose() * z / nd);
  };
  ConcReport rep = run_fitted("deltaz_bound", kNominalRate, trials, rng, workers, [&](Rng& r) {
    const Matrix x = synth::sample_covariates(model.lambdas, n, model.dist, r).first;
    const Matrix xi = synth::sample_covariate_noise(n, d, model.sigma_xi2, r);
    return Outcome{norm_for(x, xi), shape};
  });

  if (sigma_xi > 0.0) {
    const std::size_t k_lin = std::min<std::size_t>(trials, 100);
    double one = 0.0, two = 0.0;
    for (std::size_t k = 0; k < k_lin; ++k) {
      const Matrix x = synth::sample_covariates(model.lambdas, n, model.dist, rng).first;
      const Matrix xi = synth::sample_covariate_noise(n, d, model.sigma_xi2, rng);
      one += norm_for(x, xi);
      two += norm_for(x, 2.0 * xi);
    }
    rep.checks.push_back(relative_check("doubling_xi", two / one, 2.0, 0.3));
  }
  return rep;
}

}  // namespace benign::conc
