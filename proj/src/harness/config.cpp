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


#include "benign/harness/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "benign/errors.hpp"
#include "benign/numlin.hpp"

namespace benign::harness {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view what) {
  throw ContractError("config: field '" + std::string(key) + "' expects " + std::string(what) +
                      ", got '" + std::string(value) + "'");
}

double parse_double(std::string_view key, std::string_view value) {
  double out = 0.0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end || !std::isfinite(out)) bad_value(key, value, "a finite number");
  return out;
}

std::uint64_t parse_u64(std::string_view key, std::string_view value) {
  std::uint64_t out = 0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) bad_value(key, value, "a nonnegative integer");
  return out;
}

std::size_t parse_size(std::string_view key, std::string_view value) {
  return static_cast<std::size_t>(parse_u64(key, value));
}

template <typename Fn>
auto parse_enum(std::string_view key, std::string_view value, Fn&& fn) {
  try {
    return fn(value);
  } catch (const ContractError& e) {
    throw ContractError("config: field '" + std::string(key) + "': " + e.what());
  }
}

void check(bool ok, std::string_view key, const std::string& what) {
  if (!ok) throw ContractError("config: field '" + std::string(key) + "' " + what);
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "n",         "alpha",          "d",          "s",            "kappa",
      "gamma",     "zeta",           "sigma0_sq",  "spectrum_kind", "rank",
      "covariate_dist", "labels_from", "target",   "m_test",       "m_eps",
      "replicates", "master_seed",   "pinv_rel_tol", "b",          "delta"};
  return keys;
}

void ExperimentConfig::set(std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "n") {
    n = parse_size(key, value);
  } else if (key == "alpha") {
    alpha = parse_double(key, value);
    d.reset();
  } else if (key == "d") {
    d = parse_size(key, value);
    alpha.reset();
  } else if (key == "s") {
    s = parse_size(key, value);
    kappa.reset();
  } else if (key == "kappa") {
    kappa = parse_double(key, value);
    s.reset();
  } else if (key == "gamma") {
    gamma = parse_double(key, value);
  } else if (key == "zeta") {
    zeta = parse_double(key, value);
  } else if (key == "sigma0_sq") {
    sigma0_sq = parse_double(key, value);
  } else if (key == "spectrum_kind") {
    spectrum_kind = parse_enum(key, value, synth::parse_spectrum_kind);
  } else if (key == "rank") {
    rank = parse_size(key, value);
  } else if (key == "covariate_dist") {
    covariate_dist = parse_enum(key, value, synth::parse_covariate_dist);
  } else if (key == "labels_from") {
    labels_from = parse_enum(key, value, synth::parse_label_source);
  } else if (key == "target") {
    target = parse_enum(key, value, interp::parse_target_construction);
  } else if (key == "m_test") {
    m_test = parse_size(key, value);
  } else if (key == "m_eps") {
    m_eps = parse_size(key, value);
  } else if (key == "replicates") {
    replicates = parse_size(key, value);
  } else if (key == "master_seed") {
    master_seed = parse_u64(key, value);
  } else if (key == "pinv_rel_tol") {
    if (value == "auto") {
      pinv_rel_tol.reset();
    } else {
      pinv_rel_tol = parse_double(key, value);
    }
  } else if (key == "b") {
    b = parse_double(key, value);
  } else if (key == "delta") {
    delta = parse_double(key, value);
  } else {
    throw ContractError("config: unknown key '" + std::string(key) + "'");
  }
}

std::size_t ExperimentConfig::resolved_d() const {
  if (d) return *d;
  check(alpha.has_value(), "d", "is missing (set alpha or d)");
  check(*alpha > 0.0 && *alpha < 1.0, "alpha", "must lie in (0, 1)");
  return synth::ceil_pow(n, *alpha);
}

std::size_t ExperimentConfig::resolved_s() const {
  if (s) return *s;
  check(kappa.has_value(), "s", "is missing (set kappa or s)");
  check(*kappa > 0.0, "kappa", "must be positive");
  return synth::ceil_pow(n, *kappa);
}

double ExperimentConfig::resolved_rel_tol() const {
  return pinv_rel_tol ? *pinv_rel_tol : numlin::default_rel_tol(n, resolved_s());
}

synth::SpectrumSpec ExperimentConfig::spectrum() const {
  synth::SpectrumSpec spec;
  spec.kind = spectrum_kind;
  spec.gamma = gamma;
  spec.rank = rank;
  spec.d = resolved_d();
  return spec;
}

synth::DataModel ExperimentConfig::data_model() const {
  synth::DataModel m;
  m.n = n;
  m.d = resolved_d();
  m.alpha = alpha;
  m.spectrum = spectrum();
  m.noise = synth::NoiseSpec::from_zeta(zeta, m.d);
  m.sigma0_sq = sigma0_sq;
  m.covariate_dist = covariate_dist;
  return m;
}

void ExperimentConfig::validate() const {
  check(n >= 2, "n", "must be >= 2");
  const std::size_t dd = resolved_d();
  check(dd >= 1 && dd < n, "d", "must satisfy 1 <= d < n (got d = " + std::to_string(dd) +
                                    ", n = " + std::to_string(n) + ")");
  check(resolved_s() >= 1, "s", "must be >= 1");
  if (spectrum_kind == synth::SpectrumKind::polynomial) check(gamma > 1.0, "gamma", "must exceed 1");
  if (spectrum_kind == synth::SpectrumKind::finite_rank)
    check(rank >= 1 && rank <= dd, "rank", "must satisfy 1 <= rank <= d");
  check(zeta >= 1.0, "zeta", "must be >= 1");
  check(sigma0_sq >= 0.0, "sigma0_sq", "must be >= 0");
  check(m_test >= 1, "m_test", "must be >= 1");
  check(m_eps == 0 || m_eps >= 2, "m_eps", "must be 0 (skip) or >= 2");
  check(replicates >= 1, "replicates", "must be >= 1");
  if (pinv_rel_tol) check(*pinv_rel_tol > 0.0 && *pinv_rel_tol < 1.0, "pinv_rel_tol", "must lie in (0, 1)");
  check(b > 1.0, "b", "must exceed 1");
  check(delta > 0.0 && delta < 1.0, "delta", "must lie in (0, 1)");
  data_model().validate();
}

std::vector<std::pair<std::string, std::string>> parse_key_values(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "config line " + std::to_string(line_no);
    if (eq == std::string_view::npos) throw ContractError(where + ": expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ContractError(where + ": empty key");
    if (value.empty()) throw ContractError(where + ": empty value for '" + key + "'");
    if (!seen.insert(key).second) throw ContractError(where + ": duplicate key '" + key + "'");
    out.emplace_back(key, value);
  }
  return out;
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  std::set<std::string> present;
  for (const auto& [key, value] : parse_key_values(text)) {
    cfg.set(key, value);
    present.insert(key);
  }
  if (!present.count("n")) throw ContractError("config: field 'n' is required");
  if (present.count("alpha") && present.count("d"))
    throw ContractError("config: give either 'alpha' or 'd', not both");
  if (present.count("s") && present.count("kappa"))
    throw ContractError("config: give either 's' or 'kappa', not both");
  cfg.validate();
  return cfg;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path + "'");
  return ss.str();
}

ExperimentConfig load_config(const std::string& path) { return parse_config(read_file(path)); }

}  // namespace benign::harness
