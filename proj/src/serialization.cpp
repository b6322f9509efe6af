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

#include "fasta2a/serialization.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace fasta2a {
namespace {

Bytes json_bytes(const Json& v, const char* what) {
  if (v.is_number_unsigned()) return v.get<Bytes>();
  if (v.is_number_integer()) {
    if (v.get<std::int64_t>() < 0) throw ValidationError(std::string(what) + ": negative entry");
    return v.get<Bytes>();
  }
  throw ValidationError(std::string(what) + ": expected a non-negative integer");
}

std::size_t json_index(const Json& j, const char* key) {
  if (!j.contains(key)) throw ValidationError(std::string("missing key '") + key + "'");
  return static_cast<std::size_t>(json_bytes(j.at(key), key));
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

Bytes parse_cell(std::string_view tok, std::size_t line) {
  tok = trim(tok);
  const std::string where = "matrix CSV line " + std::to_string(line);
  if (!tok.empty() && tok.front() == '-') throw ValidationError(where + ": negative entry");
  Bytes v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ValidationError(where + ": bad integer '" + std::string(tok) + "'");
  }
  return v;
}

std::string pair_key(std::size_t i, std::size_t j) {
  return std::to_string(i) + "->" + std::to_string(j);
}

Json moves_to_json(std::span<const IntraMove> moves, const char* peer_key) {
  Json out = Json::array();
  for (const auto& mv : moves) {
    out.push_back({{"server", mv.server},
                   {"from", mv.from_gpu},
                   {"to", mv.to_gpu},
                   {peer_key, mv.peer_server},
                   {"bytes", mv.bytes}});
  }
  return out;
}

}  // namespace

std::string matrix_to_csv(const DemandMatrix& d) {
  std::string out = "# n=" + std::to_string(d.n_servers()) + " m=" + std::to_string(d.gpus_per_server()) + "\n";
  const std::size_t g = d.gpu_count();
  for (std::size_t r = 0; r < g; ++r) {
    for (std::size_t c = 0; c < g; ++c) {
      if (c) out += ',';
      out += std::to_string(d(r, c));
    }
    out += '\n';
  }
  return out;
}

DemandMatrix matrix_from_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t n = 0, m = 0;
  bool have_header = false;
  std::vector<std::vector<Bytes>> rows;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view sv = trim(line);
    if (sv.empty()) continue;
    if (!have_header) {
      unsigned long long nn = 0, mm = 0;
      if (std::sscanf(std::string(sv).c_str(), "# n=%llu m=%llu", &nn, &mm) != 2) {
        throw ValidationError("matrix CSV: first line must be '# n=<n> m=<m>'");
      }
      n = nn;
      m = mm;
      have_header = true;
      continue;
    }
    std::vector<Bytes> row;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = sv.find(',', start);
      row.push_back(parse_cell(sv.substr(start, comma - start), lineno));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    rows.push_back(std::move(row));
  }
  if (!have_header) throw ValidationError("matrix CSV: empty input");
  const std::size_t g = n * m;
  if (rows.size() != g) {
    throw ValidationError("matrix CSV: expected " + std::to_string(g) + " rows, got " +
                          std::to_string(rows.size()));
  }
  ByteGrid grid(g, g);
  for (std::size_t r = 0; r < g; ++r) {
    if (rows[r].size() != g) {
      throw ValidationError("matrix CSV: row " + std::to_string(r) + " has " +
                            std::to_string(rows[r].size()) + " entries, expected " + std::to_string(g));
    }
    for (std::size_t c = 0; c < g; ++c) grid(r, c) = rows[r][c];
  }
  return DemandMatrix(n, m, std::move(grid));
}

Json grid_to_json(const ByteGrid& g) {
  Json out = Json::array();
  for (std::size_t r = 0; r < g.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < g.cols(); ++c) row.push_back(g(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

ByteGrid grid_from_json(const Json& j) {
  if (!j.is_array()) throw ValidationError("grid: expected an array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = rows ? j.at(0).size() : 0;
  ByteGrid g(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const Json& row = j.at(r);
    if (!row.is_array() || row.size() != cols) throw ValidationError("grid: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) g(r, c) = json_bytes(row.at(c), "grid");
  }
  return g;
}

Json matrix_to_json(const DemandMatrix& d) {
  return {{"n", d.n_servers()}, {"m", d.gpus_per_server()}, {"sizes", grid_to_json(d.sizes())}};
}

DemandMatrix matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("sizes")) throw ValidationError("matrix JSON: missing 'sizes'");
  return DemandMatrix(json_index(j, "n"), json_index(j, "m"), grid_from_json(j.at("sizes")));
}

DemandMatrix parse_matrix(std::string_view text) {
  const std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::exception& e) {
      throw ValidationError(std::string("matrix JSON: ") + e.what());
    }
    return matrix_from_json(j);
  }
  return matrix_from_csv(text);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << text;
  if (!out) throw ValidationError("write failed for '" + path + "'");
}

DemandMatrix read_matrix_file(const std::string& path) { return parse_matrix(read_text_file(path)); }

void write_matrix_file(const std::string& path, const DemandMatrix& d) {
  const bool json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
  write_text_file(path, json ? matrix_to_json(d).dump() + "\n" : matrix_to_csv(d));
}

Json topology_to_json(const Topology& t) {
  return {{"n", t.n_servers},
          {"m", t.gpus_per_server},
          {"b1", t.scaleup_bw},
          {"b2", t.scaleout_bw},
          {"alpha", t.wakeup_delay}};
}

Topology topology_from_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("topology JSON: expected an object");
  Topology t;
  try {
    if (j.contains("n")) t.n_servers = json_index(j, "n");
    if (j.contains("m")) t.gpus_per_server = json_index(j, "m");
    if (j.contains("b1")) t.scaleup_bw = j.at("b1").get<double>();
    if (j.contains("b2")) t.scaleout_bw = j.at("b2").get<double>();
    if (j.contains("alpha")) t.wakeup_delay = j.at("alpha").get<double>();
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("topology JSON: ") + e.what());
  }
  return validate_topology(t);
}

Json plan_to_json(const BalancePlan& p) {
  Json redist = Json::object();
  for (std::size_t i = 0; i < p.n_servers(); ++i)
    for (std::size_t j = 0; j < p.n_servers(); ++j)
      if (i != j) redist[pair_key(i, j)] = grid_to_json(p.redist(i, j));
  return {{"moves", moves_to_json(p.moves(), "dst_server")},
          {"reshaped", matrix_to_json(p.reshaped())},
          {"redist", std::move(redist)}};
}

BalancePlan plan_from_json(const Json& j) {
  try {
    std::vector<IntraMove> moves;
    for (const Json& mv : j.at("moves")) {
      moves.push_back({json_index(mv, "server"), json_index(mv, "from"), json_index(mv, "to"),
                       json_index(mv, "dst_server"), json_bytes(mv.at("bytes"), "bytes")});
    }
    DemandMatrix reshaped = matrix_from_json(j.at("reshaped"));
    const std::size_t n = reshaped.n_servers();
    std::vector<ByteGrid> redist(n * n);
    const Json& rj = j.at("redist");
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (a == b) continue;
        const std::string key = pair_key(a, b);
        if (!rj.contains(key)) throw ValidationError("plan JSON: missing redist entry " + key);
        redist[a * n + b] = grid_from_json(rj.at(key));
      }
    }
    return BalancePlan(std::move(moves), std::move(reshaped), std::move(redist));
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("plan JSON: ") + e.what());
  }
}

Json stages_to_json(std::span<const PermutationStage> stages) {
  Json out = Json::array();
  for (const auto& st : stages) {
    Json edges = Json::array();
    Json bytes = Json::array();
    for (const auto& e : st.edges) {
      edges.push_back({e.src, e.dst});
      bytes.push_back(e.bytes);
    }
    out.push_back({{"weight", st.weight}, {"edges", std::move(edges)}, {"bytes", std::move(bytes)}});
  }
  return out;
}

std::vector<PermutationStage> stages_from_json(const Json& j) {
  std::vector<PermutationStage> out;
  try {
    for (const Json& sj : j) {
      PermutationStage st;
      st.weight = json_bytes(sj.at("weight"), "weight");
      const Json& edges = sj.at("edges");
      const Json& bytes = sj.at("bytes");
      if (edges.size() != bytes.size()) throw ValidationError("stage JSON: edges/bytes length mismatch");
      for (std::size_t k = 0; k < edges.size(); ++k) {
        const Json& e = edges.at(k);
        if (!e.is_array() || e.size() != 2) throw ValidationError("stage JSON: edge must be [src, dst]");
        st.edges.push_back({static_cast<std::size_t>(json_bytes(e.at(0), "src")),
                            static_cast<std::size_t>(json_bytes(e.at(1), "dst")),
                            json_bytes(bytes.at(k), "bytes")});
      }
      out.push_back(std::move(st));
    }
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("stage JSON: ") + e.what());
  }
  return out;
}

Json decomposition_to_json(const Decomposition& d) {
  Json stages = Json::array();
  for (const auto& st : d.stages) {
    Json edges = Json::array();
    for (const auto& e : st.edges) edges.push_back({e.src, e.dst});
    stages.push_back({{"weight", st.weight}, {"edges", std::move(edges)}});
  }
  return {{"common_sum", d.common_sum}, {"stages", std::move(stages)}, {"aux", grid_to_json(d.aux)}};
}

Json schedule_to_json(const Schedule& s) {
  Json out = {{"scheduler", scheduler_name(s.scheduler)},
              {"n", s.n_servers},
              {"m", s.gpus_per_server},
              {"servers", grid_to_json(s.servers.totals())}};
  if (s.scheduler == Scheduler::kFast) out["plan"] = plan_to_json(s.plan);
  Json stages = stages_to_json(s.stages);
  for (std::size_t k = 0; k < s.redistribution.size() && k < stages.size(); ++k) {
    stages[k]["redistribution"] = moves_to_json(s.redistribution[k], "src_server");
  }
  out["stages"] = std::move(stages);
  return out;
}

Schedule schedule_from_json(const Json& j) {
  Schedule s;
  try {
    s.scheduler = parse_scheduler(j.at("scheduler").get<std::string>());
    s.n_servers = json_index(j, "n");
    s.gpus_per_server = json_index(j, "m");
    s.servers = ServerMatrix(grid_from_json(j.at("servers")));
    if (s.scheduler == Scheduler::kFast) s.plan = plan_from_json(j.at("plan"));
    s.stages = stages_from_json(j.at("stages"));
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("schedule JSON: ") + e.what());
  }
  validate_schedule(s);
  return s;
}

Json timeline_to_json(const Timeline& t) {
  return {{"total_s", t.total},
          {"balance_s", t.t_balance},
          {"intra_a2a_s", t.t_intra_a2a},
          {"scaleout_sum_s", t.scaleout_sum()},
          {"final_redistribution_s", t.final_redistribution()},
          {"overhead_fraction", t.overhead_fraction()},
          {"scaleout_s", t.scaleout},
          {"redistribution_s", t.redistribution},
          {"slots_s", t.slots}};
}

Json bounds_to_json(const BoundsReport& b) {
  return {{"optimal_s", b.t_optimal},
          {"fast_worstcase_s", b.t_fast_worstcase},
          {"ratio_bound", b.ratio_bound},
          {"algo_bw_Bps", b.algo_bw},
          {"assumption_holds", b.assumption_holds},
          {"terms",
           {{"balance_s", b.terms.balance},
            {"intra_a2a_s", b.terms.intra_a2a},
            {"scaleout_s", b.terms.scaleout},
            {"redistribution_s", b.terms.redistribution}}}};
}

Json report_to_json(const SimulationReport& r) {
  return {{"timeline", timeline_to_json(r.timeline)},
          {"bounds", bounds_to_json(r.bounds)},
          {"ratio", r.ratio}};
}

std::string csv_header() {
  return "scheduler,n,m,b1,b2,alpha,seed,total_s,algo_bw_Bps,optimal_s,ratio";
}

std::string csv_row(const CsvRow& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%s,%zu,%zu,%.17g,%.17g,%.17g,%llu,%.17g,%.17g,%.17g,%.17g",
                r.scheduler.c_str(), r.topo.n_servers, r.topo.gpus_per_server, r.topo.scaleup_bw,
                r.topo.scaleout_bw, r.topo.wakeup_delay, static_cast<unsigned long long>(r.seed),
                r.total_s, r.algo_bw, r.optimal_s, r.ratio);
  return buf;
}

}  // namespace fasta2a
