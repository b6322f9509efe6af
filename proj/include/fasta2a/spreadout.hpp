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

// SpreadOut (shifted-diagonal) scheduling: in round i every sender s talks
// to (s + i) mod N. Used as the inter-server baseline and to group
// scale-up moves into rounds.

#ifndef FASTA2A_SPREADOUT_HPP_
#define FASTA2A_SPREADOUT_HPP_

#include <span>
#include <vector>

#include "fasta2a/birkhoff.hpp"
#include "fasta2a/intra_balancer.hpp"

namespace fasta2a {

// n - 1 full permutations; edge bytes are the raw T entries and each
// stage's weight is its diagonal maximum.
std::vector<PermutationStage> spreadout_stages(const ServerMatrix& s);

// Sum over the n - 1 shifted diagonals of the largest entry.
Bytes spreadout_completion_units(const ServerMatrix& s);

// Groups the moves of one server into m - 1 rounds; round r - 1 holds the
// moves with to_gpu == (from_gpu + r) mod m. An empty input yields no
// rounds. Throws ValidationError if moves span servers or indices exceed m.
std::vector<std::vector<IntraMove>> spreadout_intra(std::span<const IntraMove> moves,
                                                    const Topology& t);

}  // namespace fasta2a

#endif  // FASTA2A_SPREADOUT_HPP_
