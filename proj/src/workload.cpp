/* Copyright 2026 The fasta2a Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "fasta2a/bounds.hpp"

#include "fasta2a/workload.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "fasta2a/serialization.hpp"

namespace fasta2a {
namespace {

Topology checked(const Topology& t) { return validate_topology(t); }

}  // namespace

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  if (bound == 0) throw ValidationError("SplitMix64::below: bound must be positive");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x = next();
  while (x >= limit) x = next();
  return x % bound;
}

DemandMatrix gen_uniform(std::uint64_t seed, const Topology& topo, Bytes mean_bytes) {
  const Topology t = checked(topo);
  if (mean_bytes == 0) throw ValidationError("gen_uniform: mean_bytes must be positive");
  if (mean_bytes > (UINT64_MAX - 1) / 2) throw ValidationError("gen_uniform: mean_bytes too large");
  SplitMix64 rng(seed);
  const std::size_t g = t.gpu_count();
  DemandMatrixBuilder b(t.n_servers, t.gpus_per_server);
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j)
      if (i != j) b.at(i, j) = rng.below(2 * mean_bytes + 1);
  return std::move(b).build();
}

DemandMatrix gen_zipf(std::uint64_t seed, const Topology& topo, double skew, Bytes total_bytes) {
  const Topology t = checked(topo);
  if (!(skew >= 0.0 && skew < 1.0)) throw ValidationError("gen_zipf: skew must lie in [0, 1)");
  if (total_bytes == 0) throw ValidationError("gen_zipf: total_bytes must be positive");
  const std::size_t g = t.gpu_count();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(g * (g - 1));
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j)
      if (i != j) pairs.emplace_back(i, j);

  SplitMix64 rng(seed);
  for (std::size_t k = pairs.size(); k > 1; --k) std::swap(pairs[k - 1], pairs[rng.below(k)]);

  std::vector<long double> w(pairs.size());
  for (std::size_t r = 0; r < w.size(); ++r) {
    w[r] = 1.0L / std::pow(static_cast<long double>(r + 1), static_cast<long double>(skew));
  }
  const long double sum = std::accumulate(w.begin(), w.end(), 0.0L);

  DemandMatrixBuilder b(t.n_servers, t.gpus_per_server);
  Bytes placed = 0;
  for (std::size_t r = 0; r < pairs.size(); ++r) {
    const auto v = static_cast<Bytes>(std::floor(static_cast<long double>(total_bytes) * w[r] / sum));
    b.at(pairs[r].first, pairs[r].second) = v;
    placed += v;
  }
  if (placed > total_bytes) throw InvariantError("gen_zipf: rounding overshot the total");
  for (std::size_t r = 0; placed < total_bytes; r = (r + 1) % pairs.size(), ++placed) {
    ++b.at(pairs[r].first, pairs[r].second);
  }
  return std::move(b).build();
}

DemandMatrix gen_adversarial(const Topology& topo, Bytes tile_bytes) {
  const Topology t = checked(topo);
  if (tile_bytes == 0) throw ValidationError("gen_adversarial: tile_bytes must be positive");
  DemandMatrixBuilder b(t.n_servers, t.gpus_per_server);
  for (std::size_t i = 0; i < t.n_servers; ++i)
    for (std::size_t j = 0; j < t.n_servers; ++j)
      if (i != j) b.tile(i, j)(0, 0) = tile_bytes;
  return std::move(b).build();
}

DemandMatrix load_trace(const std::string& path) { return read_matrix_file(path); }

}  // namespace fasta2a
