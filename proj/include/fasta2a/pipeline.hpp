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

// End-to-end schedule synthesis and evaluation.

#ifndef FASTA2A_PIPELINE_HPP_
#define FASTA2A_PIPELINE_HPP_

#include <string_view>
#include <vector>

#include "fasta2a/birkhoff.hpp"
#include "fasta2a/bounds.hpp"
#include "fasta2a/core_model.hpp"
#include "fasta2a/intra_balancer.hpp"
#include "fasta2a/simulator.hpp"

namespace fasta2a {

enum class Scheduler { kFast, kSpreadout };

std::string_view scheduler_name(Scheduler s);
Scheduler parse_scheduler(std::string_view name);

struct Schedule {
  Scheduler scheduler = Scheduler::kFast;
  std::size_t n_servers = 0;
  std::size_t gpus_per_server = 0;
  ServerMatrix servers;
  BalancePlan plan;                                    // fast only
  std::vector<PermutationStage> stages;                // real bytes, ascending weight for fast
  std::vector<std::vector<IntraMove>> redistribution;  // fast only, one list per stage
};

// balance -> reduce -> embed -> decompose -> strip -> sort -> redistribute,
// with every invariant checked on the way.
Schedule synthesize_fast(const DemandMatrix& d, const Topology& t);
Schedule synthesize_spreadout(const DemandMatrix& d, const Topology& t);
Schedule synthesize(const DemandMatrix& d, const Topology& t, Scheduler s);

// Cross-checks a schedule that came from outside (e.g. a file) and fills in
// the derived redistribution lists.
void validate_schedule(Schedule& s);

Timeline simulate(const Schedule& s, const Topology& t);

struct SimulationReport {
  Timeline timeline;
  BoundsReport bounds;
  double ratio = 0.0;  // total / optimal, 0 when nothing moves
};

SimulationReport evaluate(const Schedule& s, const Topology& t);

}  // namespace fasta2a

#endif  // FASTA2A_PIPELINE_HPP_
