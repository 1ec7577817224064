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

#include <cstdint>
#include <random>

#include "benign/numlin.hpp"

namespace benign {

using Rng = std::mt19937_64;

/// One step of the SplitMix64 output function.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for the RNG stream of (cell, replicate) under a master seed. Each
/// component is folded through a SplitMix64 round so nearby triples land far
/// apart.
constexpr std::uint64_t derive_stream(std::uint64_t master_seed,
                                      std::uint64_t cell_index,
                                      std::uint64_t replicate_index) noexcept {
  std::uint64_t h = splitmix64(master_seed);
  h = splitmix64(h ^ splitmix64(cell_index + 0x632be59bd9b4e019ULL));
  h = splitmix64(h ^ splitmix64(replicate_index + 0x85157af5ULL));
  return h;
}

/// Child stream for a sub-task (e.g. trial t of a concentration experiment).
inline Rng fork(Rng& parent) { return Rng(splitmix64(parent())); }

inline double standard_normal(Rng& rng) {
  return std::normal_distribution<double>(0.0, 1.0)(rng);
}

/// Matrix of i.i.d. N(0, sd^2) entries, filled column by column.
inline numlin::Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols,
                                      double sd, Rng& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  numlin::Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = sd * dist(rng);
  return m;
}

/// Matrix of i.i.d. +-1 entries.
inline numlin::Matrix rademacher_matrix(Eigen::Index rows, Eigen::Index cols,
                                        Rng& rng) {
  numlin::Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = (rng() >> 63) ? 1.0 : -1.0;
  return m;
}

}  // namespace benign
