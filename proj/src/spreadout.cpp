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

#include "fasta2a/spreadout.hpp"

#include <algorithm>

namespace fasta2a {

std::vector<PermutationStage> spreadout_stages(const ServerMatrix& s) {
  const std::size_t n = s.size();
  std::vector<PermutationStage> stages;
  for (std::size_t shift = 1; shift < n; ++shift) {
    PermutationStage stage;
    for (std::size_t src = 0; src < n; ++src) {
      const std::size_t dst = (src + shift) % n;
      stage.edges.push_back({src, dst, s(src, dst)});
      stage.weight = std::max(stage.weight, s(src, dst));
    }
    stages.push_back(std::move(stage));
  }
  return stages;
}

Bytes spreadout_completion_units(const ServerMatrix& s) {
  Bytes total = 0;
  for (const auto& stage : spreadout_stages(s)) total = checked_add(total, stage.weight);
  return total;
}

std::vector<std::vector<IntraMove>> spreadout_intra(std::span<const IntraMove> moves,
                                                    const Topology& t) {
  if (moves.empty()) return {};
  const std::size_t m = t.gpus_per_server;
  const std::size_t server = moves.front().server;
  std::vector<std::vector<IntraMove>> rounds(m > 0 ? m - 1 : 0);
  for (const auto& mv : moves) {
    if (mv.server != server) throw ValidationError("spreadout_intra: moves span servers");
    if (mv.from_gpu >= m || mv.to_gpu >= m || mv.from_gpu == mv.to_gpu) {
      throw ValidationError("spreadout_intra: bad local GPU index");
    }
    const std::size_t shift = (mv.to_gpu + m - mv.from_gpu) % m;
    rounds[shift - 1].push_back(mv);
  }
  return rounds;
}

}  // namespace fasta2a
