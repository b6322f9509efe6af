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

// Intra-server reshaping of cross-server tiles.
//
// Each cross-server tile goes through two steps:
//   1. sender balancing: GPUs of the source server shift bytes among
//      themselves over scale-up until every row of the tile carries
//      floor(T/m) or ceil(T/m) bytes;
//   2. merged peer transfer: local GPU p ships its whole row to GPU p of the
//      destination server, so the tile becomes diagonal ("scalar").
// Bytes that land on the wrong GPU are fixed up by a redistribution step on
// the destination server, split across the scale-out stages that carry the
// pair.

#ifndef FASTA2A_INTRA_BALANCER_HPP_
#define FASTA2A_INTRA_BALANCER_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "fasta2a/core_model.hpp"

namespace fasta2a {

struct PermutationStage;

// One scale-up transfer inside `server`. For balancing moves `peer_server`
// is the destination server of the tile being balanced; for redistribution
// moves it is the source server whose bytes are being placed.
struct IntraMove {
  std::size_t server = 0;
  std::size_t from_gpu = 0;
  std::size_t to_gpu = 0;
  std::size_t peer_server = 0;
  Bytes bytes = 0;

  friend bool operator==(const IntraMove&, const IntraMove&) = default;
};

struct BalancedTile {
  ByteGrid tile;                 // rows equalized, cell destinations preserved
  std::vector<IntraMove> moves;  // in the order they were applied
};

// Equalizes the row sums of a cross-server tile. Row p is targeted at
// ceil(T/m) for p < T mod m and floor(T/m) otherwise; bytes flow from the
// most overloaded row to the most underloaded one (lowest index on ties),
// draining the largest cell first. Throws ValidationError on intra tiles.
BalancedTile balance_senders(const TileView& tile);

struct PeerMerge {
  ByteGrid scalar;  // diagonal: entry (p, p) is row p's sum
  ByteGrid redist;  // (p, q): bytes parked at GPU p that belong to GPU q
};

// Collapses a row-balanced tile to scalar form. Throws ValidationError when
// row sums differ by more than one byte.
PeerMerge merge_peer(const ByteGrid& balanced_tile);

class BalancePlan {
 public:
  BalancePlan() = default;
  BalancePlan(std::vector<IntraMove> moves, DemandMatrix reshaped, std::vector<ByteGrid> redist);

  const std::vector<IntraMove>& moves() const { return moves_; }
  const DemandMatrix& reshaped() const { return reshaped_; }
  std::size_t n_servers() const { return reshaped_.n_servers(); }
  std::size_t gpus_per_server() const { return reshaped_.gpus_per_server(); }

  // m x m table for the ordered pair (src, dst), src != dst.
  const ByteGrid& redist(std::size_t src, std::size_t dst) const;

  // Rebuilds the sender-balanced GPU matrix from peer transfers plus the
  // redistribution tables. Equal to the original demand with only
  // intra-server sender balancing applied.
  DemandMatrix delivered() const;

  // Throws InvariantError if any stored invariant fails against `original`.
  void check(const DemandMatrix& original) const;

  friend bool operator==(const BalancePlan&, const BalancePlan&) = default;

 private:
  std::vector<IntraMove> moves_;
  DemandMatrix reshaped_;
  std::vector<ByteGrid> redist_;  // n*n, diagonal slots empty
};

// Runs balance_senders and merge_peer on every cross-server tile. Intra
// tiles are copied as-is.
BalancePlan build_balance_plan(const DemandMatrix& d, const Topology& t);

// One edge of a scale-out stage with the real bytes it carries.
struct StageDelivery {
  std::size_t src_server = 0;
  std::size_t dst_server = 0;
  Bytes bytes = 0;
  // Last stage that carries this pair; receives the rounding remainder.
  bool final_for_pair = false;
  // Real bytes of the pair carried by each earlier stage. Only read when
  // final_for_pair is set.
  std::vector<Bytes> earlier_stage_bytes;
};

// Redistribution moves inside each matched destination server for one
// stage. Stage k delivering w of tile total T moves floor(cell * w / T) of
// every off-diagonal redist cell; the final stage of a pair moves whatever
// the earlier floors left behind. Throws ValidationError for a pair with no
// traffic or a delivery larger than the tile, or when a server appears twice.
std::vector<IntraMove> stage_redistribution(const BalancePlan& plan,
                                            std::span<const StageDelivery> deliveries);

// Per-stage redistribution for a whole ordered stage list; remainders go to
// the last stage touching each pair.
std::vector<std::vector<IntraMove>> redistribution_schedule(
    const BalancePlan& plan, std::span<const PermutationStage> stages);

}  // namespace fasta2a

#endif  // FASTA2A_INTRA_BALANCER_HPP_
