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

// Birkhoff-von Neumann staging of the server-level matrix.
//
// An arbitrary server matrix is padded with auxiliary (virtual) bytes until
// every row and column sums to max_rc. The padded matrix is then peeled into
// weighted permutations: find a perfect matching on the nonzero support,
// subtract its minimum entry along every matched edge, repeat. Each
// permutation is one incast-free scale-out stage. Virtual bytes are dropped
// afterwards, which can leave late stages partial.

#ifndef FASTA2A_BIRKHOFF_HPP_
#define FASTA2A_BIRKHOFF_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "fasta2a/core_model.hpp"

namespace fasta2a {

struct StageEdge {
  std::size_t src = 0;
  std::size_t dst = 0;
  Bytes bytes = 0;  // bytes this edge carries in the stage

  friend bool operator==(const StageEdge&, const StageEdge&) = default;
};

// One scale-out step: an injective server matching. `weight` is the slot
// size; edges of a stripped stage may carry less than `weight` real bytes.
struct PermutationStage {
  Bytes weight = 0;
  std::vector<StageEdge> edges;  // sorted by src

  Bytes max_edge_bytes() const;
  friend bool operator==(const PermutationStage&, const PermutationStage&) = default;
};

struct Embedding {
  ByteGrid embedded;  // off-diagonal(s) + aux; all line sums equal common_sum
  ByteGrid aux;
  Bytes common_sum = 0;
};

struct Decomposition {
  std::vector<PermutationStage> stages;  // full permutations, aux included
  ByteGrid aux;
  Bytes common_sum = 0;
};

// Upper bound on the number of Birkhoff stages for an n x n matrix.
constexpr std::size_t stage_bound(std::size_t n) { return n * n - 2 * n + 2; }

// Pads the lighter rows and columns of `s` (diagonal read as zero) with a
// north-west-corner fill of the row/column deficits.
Embedding embed_doubly_stochastic(const ServerMatrix& s);

// `support` is row-major n x n. Returns match[row] = col. Throws
// InvariantError if no perfect matching exists.
std::vector<std::size_t> find_perfect_matching(std::span<const bool> support, std::size_t n);

// Same, seeded with a partial matching (`hint[row]` = col or npos) whose
// still-supported edges are kept before augmenting.
std::vector<std::size_t> find_perfect_matching(std::span<const bool> support, std::size_t n,
                                               std::span<const std::size_t> hint);

// Peels an equal-line-sum matrix into weighted full permutations. Throws
// ValidationError if row/column sums differ and InvariantError if the
// residual ever loses its perfect matching or the stage bound is exceeded.
std::vector<PermutationStage> decompose(const ByteGrid& embedded);

// embed + decompose, keeping the aux table.
Decomposition birkhoff_decompose(const ServerMatrix& s);

// Drops virtual bytes: on each edge the aux bytes are used up by the
// earliest stages, real bytes after. Diagonal edges are always virtual.
// Edges left with no real bytes are removed, as are empty stages. Throws
// InvariantError if the per-pair real bytes do not add back to `s`.
std::vector<PermutationStage> strip_auxiliary(std::span<const PermutationStage> stages,
                                              const ByteGrid& aux, const ServerMatrix& s);

// Stable ascending sort by weight.
std::vector<PermutationStage> sort_stages_ascending(std::vector<PermutationStage> stages);

// Sum over stages of weight * permutation; used to verify exact
// reconstruction.
ByteGrid reconstruct(std::span<const PermutationStage> stages, std::size_t n);

}  // namespace fasta2a

#endif  // FASTA2A_BIRKHOFF_HPP_
