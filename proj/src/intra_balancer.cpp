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

#include "fasta2a/intra_balancer.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>

#include "fasta2a/birkhoff.hpp"

namespace fasta2a {
namespace {

// floor(a * b / c) without overflowing the intermediate product.
Bytes mul_div_floor(Bytes a, Bytes b, Bytes c) {
  return static_cast<Bytes>(static_cast<unsigned __int128>(a) * b / c);
}

std::string pair_name(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + "->" + std::to_string(j) + ")";
}

// Moves `amount` bytes out of row `from` into row `to`, largest cell first
// (lowest column on ties). Each byte keeps its destination column.
void shift_row_bytes(ByteGrid& t, std::size_t from, std::size_t to, Bytes amount) {
  const std::size_t m = t.cols();
  while (amount > 0) {
    std::size_t best = 0;
    for (std::size_t q = 1; q < m; ++q) {
      if (t(from, q) > t(from, best)) best = q;
    }
    const Bytes take = std::min(amount, t(from, best));
    t(from, best) -= take;
    t(to, best) += take;
    amount -= take;
  }
}

}  // namespace

BalancedTile balance_senders(const TileView& tile) {
  if (tile.is_intra()) {
    throw ValidationError("balance_senders needs a cross-server tile");
  }
  const std::size_t m = tile.size();
  BalancedTile out{tile.to_grid(), {}};
  const Bytes total = out.tile.total();
  const Bytes base = total / m;
  const Bytes extra = total % m;

  // Rows above target shed bytes, rows below absorb them.
  std::vector<Bytes> load(m), target(m);
  for (std::size_t p = 0; p < m; ++p) {
    load[p] = out.tile.row_sum(p);
    target[p] = base + (p < extra ? 1 : 0);
  }

  while (true) {
    std::size_t over = m, under = m;
    Bytes over_by = 0, under_by = 0;
    for (std::size_t p = 0; p < m; ++p) {
      if (load[p] > target[p] && load[p] - target[p] > over_by) {
        over_by = load[p] - target[p];
        over = p;
      }
      if (load[p] < target[p] && target[p] - load[p] > under_by) {
        under_by = target[p] - load[p];
        under = p;
      }
    }
    if (over == m) break;
    if (under == m) throw InvariantError("row balancing lost bytes");
    const Bytes amount = std::min(over_by, under_by);
    shift_row_bytes(out.tile, over, under, amount);
    load[over] -= amount;
    load[under] += amount;
    out.moves.push_back({tile.src_server(), over, under, tile.dst_server(), amount});
  }
  return out;
}

PeerMerge merge_peer(const ByteGrid& balanced_tile) {
  const std::size_t m = balanced_tile.rows();
  if (balanced_tile.cols() != m) throw ValidationError("tile must be square");
  PeerMerge out{ByteGrid(m, m), balanced_tile};
  if (m == 0) return out;
  Bytes lo = balanced_tile.row_sum(0), hi = lo;
  for (std::size_t p = 0; p < m; ++p) {
    const Bytes r = balanced_tile.row_sum(p);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
    out.scalar(p, p) = r;
  }
  if (hi - lo > 1) {
    throw ValidationError("merge_peer needs row sums within one byte of each other");
  }
  return out;
}

BalancePlan::BalancePlan(std::vector<IntraMove> moves, DemandMatrix reshaped,
                         std::vector<ByteGrid> redist)
    : moves_(std::move(moves)), reshaped_(std::move(reshaped)), redist_(std::move(redist)) {
  const std::size_t n = reshaped_.n_servers();
  const std::size_t m = reshaped_.gpus_per_server();
  if (redist_.size() != n * n) throw ValidationError("redistribution table count mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const ByteGrid& g = redist_[i * n + j];
      if (i == j ? !g.empty() : (g.rows() != m || g.cols() != m)) {
        throw ValidationError("redistribution table " + pair_name(i, j) + " has the wrong shape");
      }
    }
  }
}

const ByteGrid& BalancePlan::redist(std::size_t src, std::size_t dst) const {
  const std::size_t n = n_servers();
  if (src >= n || dst >= n || src == dst) {
    throw ValidationError("no redistribution table for pair " + pair_name(src, dst));
  }
  return redist_[src * n + dst];
}

DemandMatrix BalancePlan::delivered() const {
  const std::size_t n = n_servers();
  const std::size_t m = gpus_per_server();
  DemandMatrixBuilder b(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      auto out = b.tile(i, j);
      const TileView src = tile(reshaped_, i, j);
      for (std::size_t p = 0; p < m; ++p) {
        for (std::size_t q = 0; q < m; ++q) {
          out(p, q) = i == j ? src(p, q) : redist(i, j)(p, q);
        }
      }
    }
  }
  return std::move(b).build();
}

void BalancePlan::check(const DemandMatrix& original) const {
  const std::size_t n = n_servers();
  const std::size_t m = gpus_per_server();
  if (original.n_servers() != n || original.gpus_per_server() != m) {
    throw InvariantError("balance plan shape differs from its input");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const TileView before = tile(original, i, j);
      const TileView after = tile(reshaped_, i, j);
      if (i == j) {
        if (before.to_grid() != after.to_grid()) {
          throw InvariantError("intra-server tile " + std::to_string(i) + " was modified");
        }
        continue;
      }
      const ByteGrid& table = redist(i, j);
      if (after.total() != before.total() || table.total() != before.total()) {
        throw InvariantError("bytes not conserved for pair " + pair_name(i, j));
      }
      Bytes lo = after(0, 0), hi = lo;
      for (std::size_t p = 0; p < m; ++p) {
        for (std::size_t q = 0; q < m; ++q) {
          if (p != q && after(p, q) != 0) {
            throw InvariantError("reshaped tile " + pair_name(i, j) + " is not diagonal");
          }
        }
        if (table.row_sum(p) != after(p, p)) {
          throw InvariantError("redistribution rows disagree with peer volume for " +
                               pair_name(i, j));
        }
        // Balancing moves rows only, so every column keeps its original sum.
        if (table.col_sum(p) != before.col_sum(p)) {
          throw InvariantError("redistribution misroutes bytes for " + pair_name(i, j));
        }
        lo = std::min(lo, after(p, p));
        hi = std::max(hi, after(p, p));
      }
      if (hi - lo > 1) {
        throw InvariantError("reshaped tile " + pair_name(i, j) + " is not balanced");
      }
    }
  }
  for (const auto& mv : moves_) {
    if (mv.server >= n || mv.peer_server >= n || mv.server == mv.peer_server ||
        mv.from_gpu >= m || mv.to_gpu >= m || mv.from_gpu == mv.to_gpu || mv.bytes == 0) {
      throw InvariantError("malformed balancing move");
    }
  }
}

BalancePlan build_balance_plan(const DemandMatrix& d, const Topology& t) {
  d.check_matches(t);
  const std::size_t n = d.n_servers();
  const std::size_t m = d.gpus_per_server();
  std::vector<IntraMove> moves;
  std::vector<ByteGrid> redist(n * n);
  DemandMatrixBuilder reshaped(n, m);

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const TileView src = tile(d, i, j);
      auto dst = reshaped.tile(i, j);
      if (i == j) {
        for (std::size_t p = 0; p < m; ++p)
          for (std::size_t q = 0; q < m; ++q) dst(p, q) = src(p, q);
        continue;
      }
      BalancedTile balanced = balance_senders(src);
      PeerMerge merged = merge_peer(balanced.tile);
      for (std::size_t p = 0; p < m; ++p) dst(p, p) = merged.scalar(p, p);
      redist[i * n + j] = std::move(merged.redist);
      moves.insert(moves.end(), balanced.moves.begin(), balanced.moves.end());
    }
  }
  return BalancePlan(std::move(moves), std::move(reshaped).build(), std::move(redist));
}

std::vector<IntraMove> stage_redistribution(const BalancePlan& plan,
                                            std::span<const StageDelivery> deliveries) {
  const std::size_t n = plan.n_servers();
  const std::size_t m = plan.gpus_per_server();
  std::vector<bool> src_used(n), dst_used(n);
  std::vector<IntraMove> moves;

  for (const auto& d : deliveries) {
    if (d.src_server >= n || d.dst_server >= n || d.src_server == d.dst_server) {
      throw ValidationError("unknown server pair " + pair_name(d.src_server, d.dst_server));
    }
    if (src_used[d.src_server] || dst_used[d.dst_server]) {
      throw ValidationError("stage matching is not one-to-one");
    }
    src_used[d.src_server] = dst_used[d.dst_server] = true;

    const ByteGrid& table = plan.redist(d.src_server, d.dst_server);
    const Bytes tile_total = table.total();
    if (tile_total == 0 || d.bytes > tile_total) {
      throw ValidationError("stage delivers " + std::to_string(d.bytes) + " bytes on pair " +
                            pair_name(d.src_server, d.dst_server) + " whose tile holds " +
                            std::to_string(tile_total));
    }
    if (d.final_for_pair) {
      Bytes carried = d.bytes;
      for (Bytes w : d.earlier_stage_bytes) carried = checked_add(carried, w);
      if (carried != tile_total) {
        throw ValidationError("stages carry " + std::to_string(carried) + " of " +
                              std::to_string(tile_total) + " bytes for pair " +
                              pair_name(d.src_server, d.dst_server));
      }
    }
    for (std::size_t p = 0; p < m; ++p) {
      for (std::size_t q = 0; q < m; ++q) {
        const Bytes cell = table(p, q);
        if (p == q || cell == 0) continue;
        Bytes amount = 0;
        if (d.final_for_pair) {
          Bytes earlier = 0;
          for (Bytes w : d.earlier_stage_bytes) earlier += mul_div_floor(cell, w, tile_total);
          if (earlier > cell) throw InvariantError("redistribution over-split");
          amount = cell - earlier;
        } else {
          amount = mul_div_floor(cell, d.bytes, tile_total);
        }
        if (amount > 0) moves.push_back({d.dst_server, p, q, d.src_server, amount});
      }
    }
  }
  return moves;
}

std::vector<std::vector<IntraMove>> redistribution_schedule(
    const BalancePlan& plan, std::span<const PermutationStage> stages) {
  const std::size_t n = plan.n_servers();
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> last_stage;
  for (std::size_t k = 0; k < stages.size(); ++k) {
    for (const auto& e : stages[k].edges) {
      if (e.src >= n || e.dst >= n || e.src == e.dst) {
        throw ValidationError("unknown server pair " + pair_name(e.src, e.dst));
      }
      last_stage[{e.src, e.dst}] = k;
    }
  }
  std::vector<std::vector<Bytes>> history(n * n);
  std::vector<std::vector<IntraMove>> out;
  out.reserve(stages.size());

  for (std::size_t k = 0; k < stages.size(); ++k) {
    std::vector<StageDelivery> deliveries;
    deliveries.reserve(stages[k].edges.size());
    for (const auto& e : stages[k].edges) {
      StageDelivery d;
      d.src_server = e.src;
      d.dst_server = e.dst;
      d.bytes = e.bytes;
      d.final_for_pair = last_stage.at({e.src, e.dst}) == k;
      if (d.final_for_pair) d.earlier_stage_bytes = history[e.src * n + e.dst];
      history[e.src * n + e.dst].push_back(e.bytes);
      deliveries.push_back(std::move(d));
    }
    out.push_back(stage_redistribution(plan, deliveries));
  }
  return out;
}

}  // namespace fasta2a
