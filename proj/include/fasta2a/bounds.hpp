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

// Closed-form completion-time bounds and the algorithmic-bandwidth metric.
//
// With R = max_i sum_j T_ij (busiest sender server) and
// Tmax = max_ij T_ij:
//   optimal     = max_rc / (m * B2)
//   worst case  = optimal + (m-1)/(m*B1) * R + R/(n*B1) + Tmax/(m*B1)
//   ratio bound = 1 + (B2/B1) * (m + m/n)
// The worst case assumes every server's intra volume S_i is at most the
// mean of its outgoing tile totals; reports carry a flag when it is not.

#ifndef FASTA2A_BOUNDS_HPP_
#define FASTA2A_BOUNDS_HPP_

#include <cstddef>

#include "fasta2a/core_model.hpp"

namespace fasta2a {

struct WorstCaseTerms {
  double balance = 0.0;         // t0
  double intra_a2a = 0.0;       // t1
  double scaleout = 0.0;        // t2
  double redistribution = 0.0;  // t3

  double total() const { return balance + intra_a2a + scaleout + redistribution; }
};

struct BoundsReport {
  double t_optimal = 0.0;
  double t_fast_worstcase = 0.0;
  double ratio_bound = 0.0;
  double algo_bw = 0.0;
  bool assumption_holds = true;
  WorstCaseTerms terms;
};

// S_i <= (1/n) * sum_j T_ij for every server i.
bool intra_assumption_holds(const ServerMatrix& s);

double optimal_time(const ServerMatrix& s, const Topology& t);
WorstCaseTerms fast_worstcase_terms(const ServerMatrix& s, const Topology& t);
double fast_worstcase_time(const ServerMatrix& s, const Topology& t);
double ratio_bound(const Topology& t);

// total_bytes / (gpu_count * completion_s). Throws ValidationError when the
// divisor is zero.
double algorithmic_bandwidth(double total_bytes, std::size_t gpu_count, double completion_s);

// Bounds for `s` plus the algorithmic bandwidth of a run that finished in
// `completion_s` (algo_bw is 0 when nothing was sent).
BoundsReport bounds_report(const ServerMatrix& s, const Topology& t, double completion_s);

}  // namespace fasta2a

#endif  // FASTA2A_BOUNDS_HPP_
