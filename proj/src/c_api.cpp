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

#include "fasta2a/fasta2a.h"

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <string>

#include "fasta2a/pipeline.hpp"
#include "fasta2a/serialization.hpp"
#include "fasta2a/workload.hpp"

struct fa2a_topology {
  fasta2a::Topology value;
};
struct fa2a_matrix {
  fasta2a::DemandMatrix value;
};
struct fa2a_schedule {
  fasta2a::Schedule value;
};
struct fa2a_report {
  fasta2a::SimulationReport value;
  fasta2a::Topology topo;
  fasta2a::Scheduler scheduler;
  double total_bytes;
};

namespace {

thread_local std::string g_last_error;

fa2a_status fail(fa2a_status code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

// Runs `fn`, mapping exceptions onto status codes.
template <typename Fn>
fa2a_status guarded(Fn&& fn) {
  try {
    fn();
    return FA2A_OK;
  } catch (const fasta2a::ValidationError& e) {
    return fail(FA2A_ERR_VALIDATION, e.what());
  } catch (const fasta2a::InvariantError& e) {
    return fail(FA2A_ERR_INVARIANT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(FA2A_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(FA2A_ERR_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

fasta2a::Json parse_json(const char* text, const char* what) {
  try {
    return fasta2a::Json::parse(text);
  } catch (const fasta2a::Json::exception& e) {
    throw fasta2a::ValidationError(std::string(what) + ": " + e.what());
  }
}

std::string read_file(const char* path) { return fasta2a::read_text_file(path); }

#define FA2A_REQUIRE(cond) \
  if (!(cond)) return fail(FA2A_ERR_ARGUMENT, "invalid argument: " #cond)

}  // namespace

extern "C" {

const char* fa2a_last_error(void) { return g_last_error.c_str(); }

void fa2a_string_free(char* s) { std::free(s); }

fa2a_status fa2a_topology_create(size_t n, size_t m, double b1, double b2, double alpha,
                                 fa2a_topology** out) {
  FA2A_REQUIRE(out);
  return guarded([&] {
    fasta2a::Topology t{n, m, b1, b2, alpha};
    *out = new fa2a_topology{fasta2a::validate_topology(t)};
  });
}

fa2a_status fa2a_topology_from_json(const char* json, fa2a_topology** out) {
  FA2A_REQUIRE(json && out);
  return guarded([&] {
    *out = new fa2a_topology{fasta2a::topology_from_json(parse_json(json, "topology JSON"))};
  });
}

fa2a_status fa2a_topology_load(const char* path, fa2a_topology** out) {
  FA2A_REQUIRE(path && out);
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::exception& e) {
    return fail(FA2A_ERR_IO, e.what());
  }
  return fa2a_topology_from_json(text.c_str(), out);
}

fa2a_status fa2a_topology_get(const fa2a_topology* t, size_t* n, size_t* m, double* b1, double* b2,
                              double* alpha) {
  FA2A_REQUIRE(t);
  if (n) *n = t->value.n_servers;
  if (m) *m = t->value.gpus_per_server;
  if (b1) *b1 = t->value.scaleup_bw;
  if (b2) *b2 = t->value.scaleout_bw;
  if (alpha) *alpha = t->value.wakeup_delay;
  return FA2A_OK;
}

void fa2a_topology_free(fa2a_topology* t) { delete t; }

fa2a_status fa2a_matrix_gen_uniform(uint64_t seed, const fa2a_topology* t, uint64_t mean_bytes,
                                    fa2a_matrix** out) {
  FA2A_REQUIRE(t && out);
  return guarded([&] { *out = new fa2a_matrix{fasta2a::gen_uniform(seed, t->value, mean_bytes)}; });
}

fa2a_status fa2a_matrix_gen_zipf(uint64_t seed, const fa2a_topology* t, double skew,
                                 uint64_t total_bytes, fa2a_matrix** out) {
  FA2A_REQUIRE(t && out);
  return guarded(
      [&] { *out = new fa2a_matrix{fasta2a::gen_zipf(seed, t->value, skew, total_bytes)}; });
}

fa2a_status fa2a_matrix_gen_adversarial(const fa2a_topology* t, uint64_t tile_bytes,
                                        fa2a_matrix** out) {
  FA2A_REQUIRE(t && out);
  return guarded([&] { *out = new fa2a_matrix{fasta2a::gen_adversarial(t->value, tile_bytes)}; });
}

fa2a_status fa2a_matrix_parse(const char* text, fa2a_matrix** out) {
  FA2A_REQUIRE(text && out);
  return guarded([&] { *out = new fa2a_matrix{fasta2a::parse_matrix(text)}; });
}

fa2a_status fa2a_matrix_load(const char* path, fa2a_matrix** out) {
  FA2A_REQUIRE(path && out);
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::exception& e) {
    return fail(FA2A_ERR_IO, e.what());
  }
  return fa2a_matrix_parse(text.c_str(), out);
}

fa2a_status fa2a_matrix_save(const fa2a_matrix* d, const char* path) {
  FA2A_REQUIRE(d && path);
  try {
    fasta2a::write_matrix_file(path, d->value);
    return FA2A_OK;
  } catch (const std::exception& e) {
    return fail(FA2A_ERR_IO, e.what());
  }
}

fa2a_status fa2a_matrix_shape(const fa2a_matrix* d, size_t* n, size_t* m) {
  FA2A_REQUIRE(d);
  if (n) *n = d->value.n_servers();
  if (m) *m = d->value.gpus_per_server();
  return FA2A_OK;
}

fa2a_status fa2a_matrix_get(const fa2a_matrix* d, size_t src_gpu, size_t dst_gpu, uint64_t* bytes) {
  FA2A_REQUIRE(d && bytes);
  FA2A_REQUIRE(src_gpu < d->value.gpu_count() && dst_gpu < d->value.gpu_count());
  *bytes = d->value(src_gpu, dst_gpu);
  return FA2A_OK;
}

void fa2a_matrix_free(fa2a_matrix* d) { delete d; }

fa2a_status fa2a_schedule_synthesize(const fa2a_matrix* d, const fa2a_topology* t,
                                     fa2a_scheduler which, fa2a_schedule** out,
                                     double* synthesis_us) {
  FA2A_REQUIRE(d && t && out);
  FA2A_REQUIRE(which == FA2A_SCHED_FAST || which == FA2A_SCHED_SPREADOUT);
  return guarded([&] {
    const auto kind =
        which == FA2A_SCHED_FAST ? fasta2a::Scheduler::kFast : fasta2a::Scheduler::kSpreadout;
    const auto start = std::chrono::steady_clock::now();
    fasta2a::Schedule s = fasta2a::synthesize(d->value, t->value, kind);
    const auto stop = std::chrono::steady_clock::now();
    if (synthesis_us) {
      *synthesis_us = std::chrono::duration<double, std::micro>(stop - start).count();
    }
    *out = new fa2a_schedule{std::move(s)};
  });
}

fa2a_status fa2a_schedule_to_json(const fa2a_schedule* s, char** out) {
  FA2A_REQUIRE(s && out);
  return guarded([&] { *out = dup_string(fasta2a::schedule_to_json(s->value).dump()); });
}

fa2a_status fa2a_schedule_from_json(const char* json, fa2a_schedule** out) {
  FA2A_REQUIRE(json && out);
  return guarded([&] {
    *out = new fa2a_schedule{fasta2a::schedule_from_json(parse_json(json, "schedule JSON"))};
  });
}

fa2a_status fa2a_schedule_load(const char* path, fa2a_schedule** out) {
  FA2A_REQUIRE(path && out);
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::exception& e) {
    return fail(FA2A_ERR_IO, e.what());
  }
  return fa2a_schedule_from_json(text.c_str(), out);
}

fa2a_status fa2a_schedule_save(const fa2a_schedule* s, const char* path) {
  FA2A_REQUIRE(s && path);
  std::string text;
  const fa2a_status st = guarded([&] { text = fasta2a::schedule_to_json(s->value).dump() + "\n"; });
  if (st != FA2A_OK) return st;
  try {
    fasta2a::write_text_file(path, text);
    return FA2A_OK;
  } catch (const std::exception& e) {
    return fail(FA2A_ERR_IO, e.what());
  }
}

fa2a_status fa2a_schedule_info(const fa2a_schedule* s, fa2a_scheduler* which, size_t* n, size_t* m,
                               size_t* stages) {
  FA2A_REQUIRE(s);
  if (which) {
    *which = s->value.scheduler == fasta2a::Scheduler::kFast ? FA2A_SCHED_FAST : FA2A_SCHED_SPREADOUT;
  }
  if (n) *n = s->value.n_servers;
  if (m) *m = s->value.gpus_per_server;
  if (stages) *stages = s->value.stages.size();
  return FA2A_OK;
}

void fa2a_schedule_free(fa2a_schedule* s) { delete s; }

fa2a_status fa2a_simulate(const fa2a_schedule* s, const fa2a_topology* t, fa2a_report** out) {
  FA2A_REQUIRE(s && t && out);
  return guarded([&] {
    fasta2a::SimulationReport r = fasta2a::evaluate(s->value, t->value);
    const double bytes = static_cast<double>(s->value.servers.grand_total());
    *out = new fa2a_report{std::move(r), t->value, s->value.scheduler, bytes};
  });
}

fa2a_status fa2a_report_totals(const fa2a_report* r, double* total_s, double* optimal_s,
                               double* algo_bw, double* ratio) {
  FA2A_REQUIRE(r);
  if (total_s) *total_s = r->value.timeline.total;
  if (optimal_s) *optimal_s = r->value.bounds.t_optimal;
  if (algo_bw) *algo_bw = r->value.bounds.algo_bw;
  if (ratio) *ratio = r->value.ratio;
  return FA2A_OK;
}

fa2a_status fa2a_report_to_json(const fa2a_report* r, char** out) {
  FA2A_REQUIRE(r && out);
  return guarded([&] {
    fasta2a::Json j = fasta2a::report_to_json(r->value);
    j["scheduler"] = fasta2a::scheduler_name(r->scheduler);
    j["topology"] = fasta2a::topology_to_json(r->topo);
    *out = dup_string(j.dump(2));
  });
}

fa2a_status fa2a_csv_header(char** out) {
  FA2A_REQUIRE(out);
  return guarded([&] { *out = dup_string(fasta2a::csv_header()); });
}

fa2a_status fa2a_report_csv_row(const fa2a_report* r, uint64_t seed, char** out) {
  FA2A_REQUIRE(r && out);
  return guarded([&] {
    fasta2a::CsvRow row{std::string(fasta2a::scheduler_name(r->scheduler)),
                        r->topo,
                        seed,
                        r->value.timeline.total,
                        r->value.bounds.algo_bw,
                        r->value.bounds.t_optimal,
                        r->value.ratio};
    *out = dup_string(fasta2a::csv_row(row));
  });
}

fa2a_status fa2a_report_optimal_csv_row(const fa2a_report* r, uint64_t seed, char** out) {
  FA2A_REQUIRE(r && out);
  return guarded([&] {
    const double opt = r->value.bounds.t_optimal;
    const double bw =
        opt > 0.0 ? fasta2a::algorithmic_bandwidth(r->total_bytes, r->topo.gpu_count(), opt) : 0.0;
    fasta2a::CsvRow row{"optimal", r->topo, seed, opt, bw, opt, opt > 0.0 ? 1.0 : 0.0};
    *out = dup_string(fasta2a::csv_row(row));
  });
}

void fa2a_report_free(fa2a_report* r) { delete r; }

}  // extern "C"
