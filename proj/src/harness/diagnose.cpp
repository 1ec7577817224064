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


#include "benign/harness/diagnose.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "benign/synth.hpp"

namespace benign::harness {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string list(const numlin::Vector& v, Eigen::Index from, Eigen::Index to) {
  std::string out = "[";
  for (Eigen::Index i = from; i < to; ++i) {
    if (i > from) out += ", ";
    out += num(v(i));
  }
  return out + "]";
}

}  // namespace

Diagnostics diagnose(const ExperimentConfig& config) {
  config.validate();
  const synth::DataModel model = config.data_model();
  const std::size_t d = model.d;
  const std::size_t s = config.resolved_s();
  const double log_n = std::log(static_cast<double>(config.n));
  const numlin::Vector lambdas = synth::make_spectrum(model.spectrum);
  const numlin::Vector lam_xi = synth::noisy_spectrum(lambdas, model.noise.sigma_xi2);

  Diagnostics dg;
  dg.trace_sigma = synth::trace(lambdas);
  dg.sigma_xi2 = model.noise.sigma_xi2;
  dg.alpha_used = config.alpha ? *config.alpha : std::log(static_cast<double>(d)) / log_n;
  dg.kappa_used = config.kappa ? *config.kappa : std::log(static_cast<double>(s)) / log_n;
  dg.kstar = spectral::find_kstar(lam_xi, config.b, spectral::analytic_kstar(model.spectrum));
  // The regime labels are stated for polynomial decay; other kinds reuse gamma
  // only to satisfy the classifier's range check.
  const double gamma_for_regime =
      config.spectrum_kind == synth::SpectrumKind::polynomial ? config.gamma
                                                              : std::max(config.gamma, 2.0);
  dg.regime = spectral::classify_regime(dg.alpha_used, gamma_for_regime, config.zeta,
                                        dg.kappa_used, config.spectrum_kind);
  dg.zeta_threshold = spectral::bias_zeta_threshold(dg.alpha_used);
  dg.sheet = spectral::bound_sheet(config.sigma0_sq, dg.trace_sigma, s, config.n, d,
                                   std::sqrt(dg.sigma_xi2), config.delta);

  if (config.spectrum_kind == synth::SpectrumKind::polynomial && config.zeta >= config.gamma)
    dg.warnings.push_back("zeta >= gamma: covariate noise decays at least as fast as the "
                          "spectrum; the k* condition behind the variance bound may fail");
  if (!dg.kstar.kstar)
    dg.warnings.push_back("no k* satisfies the tail-ratio condition at b = " + num(config.b));
  if (!dg.regime.variance_converges)
    dg.warnings.push_back("kappa >= 1 + alpha: the variance reference curve does not vanish");

  std::ostringstream out;
  const Eigen::Index dl = lam_xi.size();
  const Eigen::Index head = std::min<Eigen::Index>(5, dl);
  const Eigen::Index tail_from = std::max<Eigen::Index>(head, dl - 3);
  out << "n: " << config.n << '\n'
      << "d: " << d << '\n'
      << "s: " << s << '\n'
      << "alpha: " << num(dg.alpha_used) << (config.alpha ? "" : " (derived)") << '\n'
      << "kappa: " << num(dg.kappa_used) << (config.kappa ? "" : " (derived)") << '\n'
      << "spectrum_kind: " << synth::to_string(config.spectrum_kind) << '\n';
  if (config.spectrum_kind == synth::SpectrumKind::polynomial)
    out << "gamma: " << num(config.gamma) << '\n';
  if (config.spectrum_kind == synth::SpectrumKind::finite_rank)
    out << "rank: " << config.rank << '\n';
  out << "trace_sigma: " << num(dg.trace_sigma) << '\n'
      << "zeta: " << num(config.zeta) << '\n'
      << "sigma_xi2: " << num(dg.sigma_xi2) << '\n'
      << "lambda_xi_head: " << list(lam_xi, 0, head) << '\n'
      << "lambda_xi_tail: " << list(lam_xi, tail_from, dl) << '\n'
      << "kstar_b: " << num(config.b) << '\n'
      << "kstar_target_ratio: " << num(static_cast<double>(d) / config.b) << '\n';
  if (dg.kstar.kstar) {
    out << "kstar: " << *dg.kstar.kstar << '\n'
        << "kstar_tail_ratio: " << num(dg.kstar.tail_ratio_at_kstar) << '\n';
  } else {
    out << "kstar: none\n";
  }
  out << "kstar_analytic: " << dg.kstar.analytic_prediction.value_or(0) << '\n'
      << "scenario: " << synth::to_string(dg.regime.scenario) << '\n'
      << "bias_regime: " << spectral::to_string(dg.regime.bias_case) << '\n'
      << "bias_converges: " << (dg.regime.bias_converges ? "yes" : "no");
  if (dg.regime.bias_case == spectral::BiasCase::B3)
    out << " (zeta " << num(config.zeta) << (dg.regime.bias_converges ? " > " : " <= ")
        << "4 - 2/alpha = " << num(dg.zeta_threshold) << ")";
  out << '\n'
      << "variance_converges: " << (dg.regime.variance_converges ? "yes" : "no") << " (kappa "
      << num(dg.kappa_used) << (dg.regime.variance_converges ? " < " : " >= ")
      << "1 + alpha = " << num(1.0 + dg.alpha_used) << ")\n"
      << "bound_c: " << num(dg.sheet.c) << '\n'
      << "v_upper_ref: " << num(dg.sheet.v_upper) << '\n'
      << "v_lower_ref: " << num(dg.sheet.v_lower) << '\n'
      << "b_upper_ref: " << num(dg.sheet.b_upper) << " (delta " << num(dg.sheet.delta) << ")\n";
  if (dg.warnings.empty()) {
    out << "warnings: none\n";
  } else {
    out << "warnings:\n";
    for (const auto& w : dg.warnings) out << "  - " << w << '\n';
  }
  dg.text = out.str();
  return dg;
}

}  // namespace benign::harness
