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

#include "fasta2a/simulator.hpp"

#include <algorithm>
#include <numeric>

#include "fasta2a/spreadout.hpp"

namespace fasta2a {

double Timeline::scaleout_sum() const {
  return std::accumulate(scaleout.begin(), scaleout.end(), 0.0);
}

double Timeline::final_redistribution() const {
  return redistribution.empty() ? 0.0 : redistribution.back();
}

double Timeline::overhead_fraction() const {
  const double so = scaleout_sum();
  return so > 0.0 ? (t_balance + final_redistribution()) / so : 0.0;
}

double step_cost(double bytes, double bw, const Topology& t) {
  if (!(bw > 0.0)) throw ValidationError("step_cost: bandwidth must be positive");
  if (bytes <= 0.0) return 0.0;
  return t.wakeup_delay + bytes / bw;
}

double intra_phase_time(std::span<const IntraMove> moves, const Topology& t) {
  const std::size_t n = t.n_servers;
  const std::size_t m = t.gpus_per_server;
  std::vector<Bytes> sent(n * m), received(n * m);
  for (const auto& mv : moves) {
    if (mv.server >= n || mv.from_gpu >= m || mv.to_gpu >= m || mv.from_gpu == mv.to_gpu) {
      throw ValidationError("intra_phase_time: move is not inside one server");
    }
    const std::size_t base = mv.server * m;
    sent[base + mv.from_gpu] = checked_add(sent[base + mv.from_gpu], mv.bytes);
    received[base + mv.to_gpu] = checked_add(received[base + mv.to_gpu], mv.bytes);
  }
  Bytes busiest = 0;
  for (std::size_t g = 0; g < n * m; ++g) busiest = std::max({busiest, sent[g], received[g]});
  return step_cost(static_cast<double>(busiest), t.scaleup_bw, t);
}

double intra_a2a_time(const DemandMatrix& d, const Topology& t) {
  d.check_matches(t);
  std::vector<IntraMove> moves;
  const std::size_t m = d.gpus_per_server();
  for (std::size_t i = 0; i < d.n_servers(); ++i) {
    const TileView own = tile(d, i, i);
    for (std::size_t p = 0; p < m; ++p)
      for (std::size_t q = 0; q < m; ++q)
        if (own(p, q) > 0) moves.push_back({i, p, q, i, own(p, q)});
  }
  return intra_phase_time(moves, t);
}

Timeline simulate_fast(const BalancePlan& plan, std::span<const PermutationStage> stages,
                       const Topology& t) {
  plan.reshaped().check_matches(t);
  for (std::size_t k = 1; k < stages.size(); ++k) {
    if (stages[k].weight < stages[k - 1].weight) {
      throw ValidationError("simulate_fast: stages are not sorted ascending by weight");
    }
  }
  const double m = static_cast<double>(t.gpus_per_server);
  Timeline tl;
  tl.t_balance = intra_phase_time(plan.moves(), t);
  tl.t_intra_a2a = intra_a2a_time(plan.reshaped(), t);

  const auto redist = redistribution_schedule(plan, stages);
  for (std::size_t k = 0; k < stages.size(); ++k) {
    tl.scaleout.push_back(
        step_cost(static_cast<double>(stages[k].max_edge_bytes()) / m, t.scaleout_bw, t));
    tl.redistribution.push_back(intra_phase_time(redist[k], t));
  }

  double total = tl.t_balance;
  if (stages.empty()) {
    total += tl.t_intra_a2a;
  }
  for (std::size_t k = 0; k < stages.size(); ++k) {
    const double hidden = k == 0 ? tl.t_intra_a2a : tl.redistribution[k - 1];
    tl.slots.push_back(std::max(tl.scaleout[k], hidden));
    total += tl.slots.back();
  }
  total += tl.final_redistribution();
  tl.total = total;
  return tl;
}

Timeline simulate_spreadout(const ServerMatrix& s, const Topology& t) {
  if (s.size() != t.n_servers) throw ValidationError("server matrix does not match topology");
  const double m = static_cast<double>(t.gpus_per_server);
  Timeline tl;
  for (const auto& stage : spreadout_stages(s)) {
    tl.scaleout.push_back(step_cost(static_cast<double>(stage.weight) / m, t.scaleout_bw, t));
    tl.redistribution.push_back(0.0);
    tl.slots.push_back(tl.scaleout.back());
    tl.total += tl.scaleout.back();
  }
  return tl;
}

Timeline simulate_spreadout_raw(const DemandMatrix& d, const Topology& t) {
  d.check_matches(t);
  const std::size_t n = d.n_servers();
  const std::size_t m = d.gpus_per_server();
  Timeline tl;
  for (std::size_t shift = 1; shift < n; ++shift) {
    Bytes busiest = 0;
    for (std::size_t s = 0; s < n; ++s) {
      const TileView tv = tile(d, s, (s + shift) % n);
      for (std::size_t p = 0; p < m; ++p) {
        busiest = std::max({busiest, tv.row_sum(p), tv.col_sum(p)});
      }
    }
    tl.scaleout.push_back(step_cost(static_cast<double>(busiest), t.scaleout_bw, t));
    tl.redistribution.push_back(0.0);
    tl.slots.push_back(tl.scaleout.back());
    tl.total += tl.scaleout.back();
  }
  return tl;
}

}  // namespace fasta2a
