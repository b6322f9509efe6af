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

#include "fasta2a/pipeline.hpp"

#include "fasta2a/spreadout.hpp"

namespace fasta2a {

std::string_view scheduler_name(Scheduler s) {
  return s == Scheduler::kFast ? "fast" : "spreadout";
}

Scheduler parse_scheduler(std::string_view name) {
  if (name == "fast") return Scheduler::kFast;
  if (name == "spreadout") return Scheduler::kSpreadout;
  throw ValidationError("unknown scheduler '" + std::string(name) + "'");
}

Schedule synthesize_fast(const DemandMatrix& d, const Topology& topo) {
  const Topology t = validate_topology(topo);
  d.check_matches(t);
  Schedule s;
  s.scheduler = Scheduler::kFast;
  s.n_servers = t.n_servers;
  s.gpus_per_server = t.gpus_per_server;
  s.plan = build_balance_plan(d, t);
  s.plan.check(d);
  s.servers = reduce_to_server_level(s.plan.reshaped(), t);
  const Decomposition dec = birkhoff_decompose(s.servers);
  s.stages = sort_stages_ascending(strip_auxiliary(dec.stages, dec.aux, s.servers));
  s.redistribution = redistribution_schedule(s.plan, s.stages);
  return s;
}

Schedule synthesize_spreadout(const DemandMatrix& d, const Topology& topo) {
  const Topology t = validate_topology(topo);
  d.check_matches(t);
  Schedule s;
  s.scheduler = Scheduler::kSpreadout;
  s.n_servers = t.n_servers;
  s.gpus_per_server = t.gpus_per_server;
  s.servers = reduce_to_server_level(d, t);
  s.stages = spreadout_stages(s.servers);
  return s;
}

Schedule synthesize(const DemandMatrix& d, const Topology& t, Scheduler s) {
  return s == Scheduler::kFast ? synthesize_fast(d, t) : synthesize_spreadout(d, t);
}

void validate_schedule(Schedule& s) {
  const std::size_t n = s.n_servers;
  if (s.servers.size() != n) throw ValidationError("schedule: server matrix size mismatch");
  if (s.scheduler == Scheduler::kSpreadout) {
    if (s.stages != spreadout_stages(s.servers)) {
      throw ValidationError("schedule: stages are not the SpreadOut rotation of the servers");
    }
    s.redistribution.clear();
    return;
  }
  if (s.plan.n_servers() != n || s.plan.gpus_per_server() != s.gpus_per_server) {
    throw ValidationError("schedule: balance plan shape mismatch");
  }
  Topology t;
  t.n_servers = n;
  t.gpus_per_server = s.gpus_per_server;
  if (reduce_to_server_level(s.plan.reshaped(), t) != s.servers) {
    throw ValidationError("schedule: reshaped matrix disagrees with server totals");
  }
  if (reconstruct(s.stages, n) != s.servers.off_diagonal()) {
    throw ValidationError("schedule: stages do not carry the server totals");
  }
  s.redistribution = redistribution_schedule(s.plan, s.stages);
}

Timeline simulate(const Schedule& s, const Topology& topo) {
  const Topology t = validate_topology(topo);
  if (t.n_servers != s.n_servers || t.gpus_per_server != s.gpus_per_server) {
    throw ValidationError("schedule does not match topology");
  }
  if (s.scheduler == Scheduler::kSpreadout) return simulate_spreadout(s.servers, t);
  return simulate_fast(s.plan, s.stages, t);
}

SimulationReport evaluate(const Schedule& s, const Topology& t) {
  SimulationReport r;
  r.timeline = simulate(s, t);
  r.bounds = bounds_report(s.servers, t, r.timeline.total);
  r.ratio = r.bounds.t_optimal > 0.0 ? r.timeline.total / r.bounds.t_optimal : 0.0;
  return r;
}

}  // namespace fasta2a
