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


#include "benign/harness/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <utility>

#include "benign/errors.hpp"
#include "benign/relu_features.hpp"
#include "benign/risk.hpp"
#include "benign/rng.hpp"
#include "benign/spectral.hpp"

namespace benign::harness {

namespace {

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(std::size_t v) { return std::to_string(v); }

// Per-config quantities that do not depend on the replicate.
struct Deterministic {
  spectral::KstarResult kstar;
  spectral::BoundSheet sheet;
};

Deterministic deterministic_part(const ExperimentConfig& cfg) {
  const synth::DataModel model = cfg.data_model();
  const numlin::Vector lambdas = synth::make_spectrum(model.spectrum);
  const numlin::Vector lam_xi = synth::noisy_spectrum(lambdas, model.noise.sigma_xi2);
  Deterministic det;
  det.kstar = spectral::find_kstar(lam_xi, cfg.b, spectral::analytic_kstar(model.spectrum));
  det.sheet = spectral::bound_sheet(cfg.sigma0_sq, synth::trace(lambdas), cfg.resolved_s(), cfg.n,
                                    model.d, std::sqrt(model.noise.sigma_xi2), cfg.delta);
  return det;
}

void run_replicate(const ExperimentConfig& cfg, ResultRow& row, double projector_tol) {
  const synth::DataModel model = cfg.data_model();
  const std::size_t s = cfg.resolved_s();
  const double tol = cfg.resolved_rel_tol();
  Rng rng(derive_stream(cfg.master_seed, row.cell, row.replicate));

  const numlin::Vector lambdas = synth::make_spectrum(model.spectrum);
  const auto [x, u] = synth::sample_covariates(lambdas, model.n, model.covariate_dist, rng);
  const numlin::Matrix xi =
      synth::sample_covariate_noise(model.n, model.d, model.noise.sigma_xi2, rng);
  const auto map = features::FeatureMap::sample(s, model.d, rng);
  const numlin::Matrix z_xi = map.feature_matrix(x + xi);
  const interp::TargetSpec target = interp::make_target(s, cfg.target, rng);
  const numlin::Vector signal = cfg.labels_from == synth::LabelSource::noisy
                                    ? numlin::Vector(z_xi * target.beta_star)
                                    : numlin::Vector(map.feature_matrix(x) * target.beta_star);
  const numlin::Matrix test_x =
      synth::sample_covariates(lambdas, cfg.m_test, model.covariate_dist, rng).first;

  const risk::RiskContext ctx(z_xi, risk::test_features(map, test_x), tol);

  const numlin::Vector probe = gaussian_matrix(static_cast<Eigen::Index>(s), 1, 1.0, rng).col(0);
  const double defect = risk::NullProjector(ctx.solver()).defect(z_xi, probe);
  if (!(defect <= projector_tol))
    throw NumericalError("null-space projector defect " + fmt(defect) + " exceeds tolerance",
                         model.n, s);

  row.numerical_rank = ctx.solver().rank();
  row.bias = ctx.bias_for_signal(target.beta_star, signal);
  row.variance = ctx.variance_exact(cfg.sigma0_sq);
  row.excess_risk = row.bias + row.variance;
  if (cfg.m_eps == 0) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    row.mc_risk = row.mc_stderr = row.variance_mc = row.variance_mc_stderr = nan;
  } else {
    const risk::NoiseMonteCarlo mc =
        risk::monte_carlo(ctx, target.beta_star, signal, cfg.sigma0_sq, cfg.m_eps, rng);
    row.mc_risk = mc.risk.value;
    row.mc_stderr = mc.risk.std_error;
    row.variance_mc = mc.variance.value;
    row.variance_mc_stderr = mc.variance.std_error;
  }
}

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentConfig& config, std::size_t cell_index,
                                      const RunOptions& options) {
  config.validate();
  const Deterministic det = deterministic_part(config);
  std::vector<ResultRow> rows;
  rows.reserve(config.replicates);
  for (std::size_t r = 0; r < config.replicates; ++r) {
    ResultRow row;
    row.cell = cell_index;
    row.replicate = r;
    row.config = config;
    row.kstar = det.kstar.kstar;
    row.kstar_analytic = det.kstar.analytic_prediction.value_or(0);
    row.cond4_holds = det.kstar.kstar.has_value();
    row.v_upper_ref = det.sheet.v_upper;
    row.v_lower_ref = det.sheet.v_lower;
    row.b_upper_ref = det.sheet.b_upper;
    const auto start = std::chrono::steady_clock::now();
    try {
      run_replicate(config, row, options.projector_tol);
    } catch (const NumericalError& e) {
      row.failed = true;
      row.error = e.what();
    }
    if (options.timing)
      row.runtime_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
              .count();
    rows.push_back(std::move(row));
  }
  return rows;
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = {
      "cell",        "replicate",   "n",           "alpha",         "d",
      "s",           "kappa",       "gamma",       "zeta",          "sigma0_sq",
      "spectrum_kind", "rank",      "covariate_dist", "labels_from", "target",
      "m_test",      "m_eps",       "replicates",  "master_seed",   "pinv_rel_tol",
      "b",           "delta",       "kstar",       "kstar_analytic", "cond4_holds",
      "B_R",         "V_R",         "R",           "mc_risk",       "mc_stderr",
      "v_upper_ref", "v_lower_ref", "b_upper_ref", "numerical_rank", "runtime_ms"};
  return cols;
}

std::string csv_header() {
  std::string out;
  for (const auto& c : csv_columns()) {
    if (!out.empty()) out += ',';
    out += c;
  }
  return out;
}

std::string csv_row(const ResultRow& row) {
  const ExperimentConfig& c = row.config;
  const std::vector<std::string> fields = {
      fmt(row.cell),
      fmt(row.replicate),
      fmt(c.n),
      c.alpha ? fmt(*c.alpha) : "NA",
      fmt(c.resolved_d()),
      fmt(c.resolved_s()),
      c.kappa ? fmt(*c.kappa) : "NA",
      fmt(c.gamma),
      fmt(c.zeta),
      fmt(c.sigma0_sq),
      std::string(synth::to_string(c.spectrum_kind)),
      fmt(c.rank),
      std::string(synth::to_string(c.covariate_dist)),
      std::string(synth::to_string(c.labels_from)),
      std::string(interp::to_string(c.target)),
      fmt(c.m_test),
      fmt(c.m_eps),
      fmt(c.replicates),
      std::to_string(c.master_seed),
      fmt(c.resolved_rel_tol()),
      fmt(c.b),
      fmt(c.delta),
      row.kstar ? fmt(*row.kstar) : "NA",
      fmt(row.kstar_analytic),
      row.cond4_holds ? "true" : "false",
      fmt(row.bias),
      fmt(row.variance),
      fmt(row.excess_risk),
      fmt(row.mc_risk),
      fmt(row.mc_stderr),
      fmt(row.v_upper_ref),
      fmt(row.v_lower_ref),
      fmt(row.b_upper_ref),
      fmt(row.numerical_rank),
      fmt(row.runtime_ms)};
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += fields[i];
  }
  return out;
}

std::string columns_description() {
  return
      "cell            grid cell index (0 for a single run)\n"
      "replicate       replicate index within the cell\n"
      "n               training sample count\n"
      "alpha           dimension exponent, d = ceil(n^alpha); NA when d was given\n"
      "d               covariate dimension\n"
      "s               number of random ReLU features\n"
      "kappa           feature exponent, s = ceil(n^kappa); NA when s was given\n"
      "gamma           polynomial spectrum decay, lambda_i = i^-gamma\n"
      "zeta            covariate-noise exponent, sigma_xi^2 = d^-zeta\n"
      "sigma0_sq       label-noise variance\n"
      "spectrum_kind   polynomial | exponential | finite_rank\n"
      "rank            rank of a finite_rank spectrum (ignored otherwise)\n"
      "covariate_dist  gaussian | rademacher latent factors\n"
      "labels_from     noisy: Y = Z_xi beta + eps; clean: Y = Z beta + eps\n"
      "target          unit_random | first_coordinate construction of beta\n"
      "m_test          clean test points used for the expectation over x\n"
      "m_eps           label-noise redraws for the Monte-Carlo risk (0 = skipped)\n"
      "replicates      replicates per cell\n"
      "master_seed     master RNG seed\n"
      "pinv_rel_tol    singular-value cutoff relative to sigma_max\n"
      "b               constant in the k* tail-ratio condition\n"
      "delta           confidence parameter of the bias reference curve\n"
      "kstar           smallest k with sum_{i>k} lambda^xi_i / lambda^xi_k >= d/b; NA if none\n"
      "kstar_analytic  closed-form k* for the spectrum kind\n"
      "cond4_holds     true when kstar exists\n"
      "B_R             exact bias given the design and test set\n"
      "V_R             exact variance given the design and test set\n"
      "R               B_R + V_R\n"
      "mc_risk         Monte-Carlo excess risk over m_eps label-noise redraws\n"
      "mc_stderr       standard error of mc_risk\n"
      "v_upper_ref     sigma0^2 Tr(Sigma) s/(n d), constant 1\n"
      "v_lower_ref     same curve, lower reference (equal to v_upper_ref at c = 1)\n"
      "b_upper_ref     sqrt(log(s/delta)/n) + d^2 sigma_xi / n, constant 1\n"
      "numerical_rank  retained singular values of Z_xi\n"
      "runtime_ms      wall time of the replicate; 0 unless timing was requested\n";
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << csv_header() << '\n';
  for (const ResultRow& r : rows)
    if (!r.failed) out << csv_row(r) << '\n';
}

}  // namespace benign::harness
