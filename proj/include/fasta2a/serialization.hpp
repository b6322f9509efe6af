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

// Text formats: matrix CSV/JSON, topology, balance plans, stage lists,
// schedules, timelines and bounds reports.

#ifndef FASTA2A_SERIALIZATION_HPP_
#define FASTA2A_SERIALIZATION_HPP_

#include <string>
#include <string_view>

#include "json.hpp"

#include "fasta2a/bounds.hpp"
#include "fasta2a/pipeline.hpp"
#include "fasta2a/simulator.hpp"

namespace fasta2a {

using Json = nlohmann::ordered_json;

// CSV: header line "# n=<n> m=<m>", then one comma-separated row per GPU.
std::string matrix_to_csv(const DemandMatrix& d);
DemandMatrix matrix_from_csv(std::string_view text);

// {"n": .., "m": .., "sizes": [[..], ..]}
Json matrix_to_json(const DemandMatrix& d);
DemandMatrix matrix_from_json(const Json& j);

// JSON when the first non-blank character is '{', CSV otherwise.
DemandMatrix parse_matrix(std::string_view text);
DemandMatrix read_matrix_file(const std::string& path);
// JSON for a ".json" suffix, CSV otherwise.
void write_matrix_file(const std::string& path, const DemandMatrix& d);

// {"n", "m", "b1", "b2", "alpha"}; missing keys take Topology defaults.
Json topology_to_json(const Topology& t);
Topology topology_from_json(const Json& j);

Json grid_to_json(const ByteGrid& g);
ByteGrid grid_from_json(const Json& j);

Json plan_to_json(const BalancePlan& p);
BalancePlan plan_from_json(const Json& j);

Json decomposition_to_json(const Decomposition& d);

// [{"weight", "edges": [[src, dst], ..], "bytes": [..]}, ..]
Json stages_to_json(std::span<const PermutationStage> stages);
std::vector<PermutationStage> stages_from_json(const Json& j);

Json schedule_to_json(const Schedule& s);
Schedule schedule_from_json(const Json& j);

Json timeline_to_json(const Timeline& t);
Json bounds_to_json(const BoundsReport& b);
Json report_to_json(const SimulationReport& r);

// scheduler,n,m,b1,b2,alpha,seed,total_s,algo_bw_Bps,optimal_s,ratio
struct CsvRow {
  std::string scheduler;
  Topology topo;
  std::uint64_t seed = 0;
  double total_s = 0.0;
  double algo_bw = 0.0;
  double optimal_s = 0.0;
  double ratio = 0.0;
};
std::string csv_header();
std::string csv_row(const CsvRow& r);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

}  // namespace fasta2a

#endif  // FASTA2A_SERIALIZATION_HPP_
