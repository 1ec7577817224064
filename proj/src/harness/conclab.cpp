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


#include "benign/harness/conclab.hpp"

#include <cmath>
#include <cstdio>

#include "benign/errors.hpp"
#include "benign/relu_features.hpp"
#include "benign/rng.hpp"
#include "benign/synth.hpp"

namespace benign::harness {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::size_t as_count(const ConcParams& p, const std::string& key) {
  const double v = p.at(key);
  require(v >= 0.0 && std::floor(v) == v, "conclab: '" + key + "' must be a nonnegative integer");
  return static_cast<std::size_t>(v);
}

numlin::Vector poly_spectrum(std::size_t d, double gamma) {
  synth::SpectrumSpec spec;
  spec.kind = synth::SpectrumKind::polynomial;
  spec.gamma = gamma;
  spec.d = d;
  return synth::make_spectrum(spec);
}

conc::CovarianceModel poly_model(const ConcParams& p) {
  const std::size_t d = as_count(p, "d");
  conc::CovarianceModel m;
  m.lambdas = poly_spectrum(d, p.at("gamma"));
  m.sigma_xi2 = p.count("zeta") ? std::pow(static_cast<double>(d), -p.at("zeta")) : 0.0;
  return m;
}

std::uint64_t lemma_tag(const std::string& lemma) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char c : lemma) h = (h ^ c) * 0x100000001b3ULL;
  return h;
}

}  // namespace

const std::vector<std::string>& conclab_lemmas() {
  static const std::vector<std::string> ids = {
      "relu_moments",     "subexp_sum",  "norm_concentration", "eigen_bounds",
      "matrix_bernstein", "design_gap",  "deltaz_bound"};
  return ids;
}

ConcParams conclab_defaults(const std::string& lemma) {
  if (lemma == "relu_moments") return {{"sigma_w", 1.0}, {"x_norm", 1.0}, {"m", 1e5}};
  if (lemma == "subexp_sum")
    return {{"d", 50}, {"gamma", 2.0}, {"t", 3.0}, {"trials", 1e4}};
  if (lemma == "norm_concentration")
    return {{"mu", 0.0}, {"sigma", 1.0}, {"n", 100}, {"t", 5.0}, {"trials", 1e4}};
  if (lemma == "eigen_bounds")
    return {{"d", 50}, {"gamma", 2.0}, {"s", 100}, {"t", 10.0}, {"trials", 1000}};
  if (lemma == "matrix_bernstein")
    return {{"d", 10},       {"gamma", 2.0}, {"s", 100},         {"n", 200},
            {"delta", 0.05}, {"trials", 1000}, {"reference", 1e5}};
  if (lemma == "design_gap")
    return {{"d", 20}, {"gamma", 2.0}, {"zeta", 1.0}, {"s", 200}, {"n", 400}, {"trials", 1000}};
  if (lemma == "deltaz_bound")
    return {{"d", 20}, {"gamma", 2.0}, {"zeta", 1.0}, {"s", 100}, {"n", 200}, {"trials", 1000}};
  throw ContractError("conclab: unknown lemma '" + lemma + "'");
}

conc::ConcReport run_conclab(const std::string& lemma, const ConcParams& overrides,
                             std::uint64_t seed, std::size_t workers) {
  ConcParams p = conclab_defaults(lemma);
  for (const auto& [key, value] : overrides) {
    require(p.count(key) == 1, "conclab: lemma '" + lemma + "' has no parameter '" + key + "'");
    p[key] = value;
  }
  Rng rng(derive_stream(seed, lemma_tag(lemma), 0));

  if (lemma == "relu_moments")
    return conc::test_relu_moments(p["sigma_w"], p["x_norm"], as_count(p, "m"), rng);
  if (lemma == "subexp_sum")
    return conc::test_subexp_sum(poly_spectrum(as_count(p, "d"), p["gamma"]), p["t"],
                                 as_count(p, "trials"), rng, workers);
  if (lemma == "norm_concentration")
    return conc::test_norm_concentration(p["mu"], p["sigma"], as_count(p, "n"), p["t"],
                                         as_count(p, "trials"), rng, workers);
  if (lemma == "eigen_bounds")
    return conc::test_eigen_bounds(poly_spectrum(as_count(p, "d"), p["gamma"]),
                                   as_count(p, "s"), p["t"], as_count(p, "trials"), rng, workers);

  const conc::CovarianceModel model = poly_model(p);
  const auto map = features::FeatureMap::sample(as_count(p, "s"), as_count(p, "d"), rng);
  if (lemma == "matrix_bernstein")
    return conc::test_matrix_bernstein(model, map, as_count(p, "n"), p["delta"],
                                       as_count(p, "trials"), rng, workers,
                                       as_count(p, "reference"));
  if (lemma == "design_gap")
    return conc::test_design_gap(model, map, as_count(p, "n"), as_count(p, "trials"), rng,
                                 workers);
  return conc::test_deltaz_bound(model, map, as_count(p, "n"), as_count(p, "trials"), rng,
                                 workers);
}

std::string conclab_summary_csv(const conc::ConcReport& r) {
  std::string head =
      "lemma_id,trials,theoretical_rate,empirical_violation_rate,fitted_constant,"
      "validation_constant,constant_ratio";
  std::string row = r.lemma_id + ',' + std::to_string(r.trials) + ',' + fmt(r.theoretical_rate) +
                    ',' + fmt(r.empirical_violation_rate) + ',' + fmt(r.fitted_constant) + ',' +
                    fmt(r.validation_constant) + ',' + fmt(r.constant_ratio());
  for (const auto& c : r.checks) {
    head += ',' + c.name + "_measured," + c.name + "_expected," + c.name + "_passed";
    row += ',' + fmt(c.measured) + ',' + fmt(c.expected) + ',' + (c.passed ? "true" : "false");
  }
  return head + '\n' + row + '\n';
}

std::string conclab_envelope_csv(const conc::ConcReport& r) {
  std::string out = "trial,statistic,shape,bound\n";
  for (std::size_t i = 0; i < r.envelope_values.size(); ++i) {
    const auto& e = r.envelope_values[i];
    out += std::to_string(i) + ',' + fmt(e.statistic) + ',' + fmt(e.shape) + ',' + fmt(e.bound) +
           '\n';
  }
  return out;
}

}  // namespace benign::harness
