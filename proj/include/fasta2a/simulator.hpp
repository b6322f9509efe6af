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

// Analytical completion-time model.
//
// Every synchronized transfer step costs a fixed wake-up delay plus
// bytes / bandwidth; steps that move nothing cost nothing. There is no
// queueing or congestion term. A FAST schedule runs as
//
//   balance | slot 1 | slot 2 | ... | slot K | final redistribution
//
// where slot 1 = max(scale-out 1, intra-server all-to-all) and
// slot k = max(scale-out k, redistribution of stage k - 1).

#ifndef FASTA2A_SIMULATOR_HPP_
#define FASTA2A_SIMULATOR_HPP_

#include <span>
#include <vector>

#include "fasta2a/birkhoff.hpp"
#include "fasta2a/core_model.hpp"
#include "fasta2a/intra_balancer.hpp"

namespace fasta2a {

struct Timeline {
  double t_balance = 0.0;
  double t_intra_a2a = 0.0;
  std::vector<double> scaleout;        // per stage
  std::vector<double> redistribution;  // per stage
  std::vector<double> slots;           // per stage, after overlap
  double total = 0.0;

  double scaleout_sum() const;
  double final_redistribution() const;
  // (balance + final redistribution) / total scale-out time.
  double overhead_fraction() const;
};

// wakeup_delay + bytes / bw, or 0 when bytes == 0.
double step_cost(double bytes, double bw, const Topology& t);

// One synchronized scale-up phase: per GPU take max(sent, received); the
// phase lasts as long as the busiest GPU in the cluster.
double intra_phase_time(std::span<const IntraMove> moves, const Topology& t);

// Scale-up time of the same-server tiles of `d`.
double intra_a2a_time(const DemandMatrix& d, const Topology& t);

// `stages` must be sorted ascending by weight (ValidationError otherwise).
Timeline simulate_fast(const BalancePlan& plan, std::span<const PermutationStage> stages,
                       const Topology& t);

// Per-edge GPU load modeled as T_ij / m.
Timeline simulate_spreadout(const ServerMatrix& s, const Topology& t);

// SpreadOut on the raw GPU matrix: a stage lasts as long as the busiest
// GPU row or column inside any of its tiles.
Timeline simulate_spreadout_raw(const DemandMatrix& d, const Topology& t);

}  // namespace fasta2a

#endif  // FASTA2A_SIMULATOR_HPP_
