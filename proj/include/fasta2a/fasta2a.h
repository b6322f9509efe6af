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

/* C interface to the fasta2a scheduler library.
 *
 * Every call returns a fa2a_status; on failure fa2a_last_error() holds a
 * message for the calling thread until its next failing call. Handles are
 * opaque and released with the matching *_free function. Strings handed
 * out through char** are released with fa2a_string_free.
 */

#ifndef FASTA2A_FASTA2A_H_
#define FASTA2A_FASTA2A_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define FA2A_API __attribute__((visibility("default")))
#else
#define FA2A_API
#endif

typedef enum fa2a_status {
  FA2A_OK = 0,
  FA2A_ERR_ARGUMENT = 1,   /* null pointer or out-of-range argument */
  FA2A_ERR_VALIDATION = 2, /* malformed input */
  FA2A_ERR_INVARIANT = 3,  /* internal consistency check failed */
  FA2A_ERR_IO = 4,
  FA2A_ERR_INTERNAL = 5
} fa2a_status;

typedef enum fa2a_scheduler {
  FA2A_SCHED_FAST = 0,
  FA2A_SCHED_SPREADOUT = 1
} fa2a_scheduler;

typedef struct fa2a_topology fa2a_topology;
typedef struct fa2a_matrix fa2a_matrix;
typedef struct fa2a_schedule fa2a_schedule;
typedef struct fa2a_report fa2a_report;

FA2A_API const char* fa2a_last_error(void);
FA2A_API void fa2a_string_free(char* s);

/* Topology: n servers of m GPUs, scale-up b1 and scale-out b2 in bytes/s,
 * alpha seconds of wake-up delay per transfer step. */
FA2A_API fa2a_status fa2a_topology_create(size_t n, size_t m, double b1, double b2, double alpha,
                                          fa2a_topology** out);
FA2A_API fa2a_status fa2a_topology_from_json(const char* json, fa2a_topology** out);
FA2A_API fa2a_status fa2a_topology_load(const char* path, fa2a_topology** out);
FA2A_API fa2a_status fa2a_topology_get(const fa2a_topology* t, size_t* n, size_t* m, double* b1,
                                       double* b2, double* alpha);
FA2A_API void fa2a_topology_free(fa2a_topology* t);

/* Demand matrices. */
FA2A_API fa2a_status fa2a_matrix_gen_uniform(uint64_t seed, const fa2a_topology* t,
                                             uint64_t mean_bytes, fa2a_matrix** out);
FA2A_API fa2a_status fa2a_matrix_gen_zipf(uint64_t seed, const fa2a_topology* t, double skew,
                                          uint64_t total_bytes, fa2a_matrix** out);
FA2A_API fa2a_status fa2a_matrix_gen_adversarial(const fa2a_topology* t, uint64_t tile_bytes,
                                                 fa2a_matrix** out);
FA2A_API fa2a_status fa2a_matrix_parse(const char* text, fa2a_matrix** out);
FA2A_API fa2a_status fa2a_matrix_load(const char* path, fa2a_matrix** out);
/* JSON when path ends in ".json", CSV otherwise. */
FA2A_API fa2a_status fa2a_matrix_save(const fa2a_matrix* d, const char* path);
FA2A_API fa2a_status fa2a_matrix_shape(const fa2a_matrix* d, size_t* n, size_t* m);
FA2A_API fa2a_status fa2a_matrix_get(const fa2a_matrix* d, size_t src_gpu, size_t dst_gpu,
                                     uint64_t* bytes);
FA2A_API void fa2a_matrix_free(fa2a_matrix* d);

/* Schedules. synthesis_us (optional) receives the wall time of synthesis
 * alone, in microseconds. */
FA2A_API fa2a_status fa2a_schedule_synthesize(const fa2a_matrix* d, const fa2a_topology* t,
                                              fa2a_scheduler which, fa2a_schedule** out,
                                              double* synthesis_us);
FA2A_API fa2a_status fa2a_schedule_to_json(const fa2a_schedule* s, char** out);
FA2A_API fa2a_status fa2a_schedule_from_json(const char* json, fa2a_schedule** out);
FA2A_API fa2a_status fa2a_schedule_load(const char* path, fa2a_schedule** out);
FA2A_API fa2a_status fa2a_schedule_save(const fa2a_schedule* s, const char* path);
FA2A_API fa2a_status fa2a_schedule_info(const fa2a_schedule* s, fa2a_scheduler* which, size_t* n,
                                        size_t* m, size_t* stages);
FA2A_API void fa2a_schedule_free(fa2a_schedule* s);

/* Simulation and bounds. */
FA2A_API fa2a_status fa2a_simulate(const fa2a_schedule* s, const fa2a_topology* t,
                                   fa2a_report** out);
FA2A_API fa2a_status fa2a_report_totals(const fa2a_report* r, double* total_s, double* optimal_s,
                                        double* algo_bw, double* ratio);
FA2A_API fa2a_status fa2a_report_to_json(const fa2a_report* r, char** out);
/* "scheduler,n,m,b1,b2,alpha,seed,total_s,algo_bw_Bps,optimal_s,ratio" */
FA2A_API fa2a_status fa2a_csv_header(char** out);
FA2A_API fa2a_status fa2a_report_csv_row(const fa2a_report* r, uint64_t seed, char** out);
/* Same columns for the bandwidth-optimal bound of the simulated workload. */
FA2A_API fa2a_status fa2a_report_optimal_csv_row(const fa2a_report* r, uint64_t seed, char** out);
FA2A_API void fa2a_report_free(fa2a_report* r);

#ifdef __cplusplus
}
#endif

#endif /* FASTA2A_FASTA2A_H_ */
