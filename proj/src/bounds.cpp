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

#include <algorithm>

namespace fasta2a {
namespace {

void check_shape(const ServerMatrix& s, const Topology& t) {
  if (s.size() != t.n_servers) throw ValidationError("server matrix does not match topology");
}

Bytes max_sender_load(const ServerMatrix& s) {
  Bytes best = 0;
  for (std::size_t i = 0; i < s.size(); ++i) best = std::max(best, s.off_row_sum(i));
  return best;
}

}  // namespace

bool intra_assumption_holds(const ServerMatrix& s) {
  const std::size_t n = s.size();
  for (std::size_t i = 0; i < n; ++i) {
    // Compare n * S_i against the row sum in 128 bits.
    const auto lhs = static_cast<unsigned __int128>(s.intra(i)) * n;
    if (lhs > s.off_row_sum(i)) return false;
  }
  return true;
}

double optimal_time(const ServerMatrix& s, const Topology& t) {
  check_shape(s, t);
  return static_cast<double>(max_rc(s)) /
         (static_cast<double>(t.gpus_per_server) * t.scaleout_bw);
}

WorstCaseTerms fast_worstcase_terms(const ServerMatrix& s, const Topology& t) {
  check_shape(s, t);
  const double m = static_cast<double>(t.gpus_per_server);
  const double n = static_cast<double>(t.n_servers);
  const double sender = static_cast<double>(max_sender_load(s));
  const double largest = static_cast<double>(s.off_diagonal_max());
  WorstCaseTerms w;
  w.balance = (m - 1.0) / (m * t.scaleup_bw) * sender;
  w.intra_a2a = sender / (n * t.scaleup_bw);
  w.scaleout = optimal_time(s, t);
  w.redistribution = largest / (m * t.scaleup_bw);
  return w;
}

double fast_worstcase_time(const ServerMatrix& s, const Topology& t) {
  return fast_worstcase_terms(s, t).total();
}

double ratio_bound(const Topology& t) {
  const double m = static_cast<double>(t.gpus_per_server);
  const double n = static_cast<double>(t.n_servers);
  return 1.0 + (t.scaleout_bw / t.scaleup_bw) * (m + m / n);
}

double algorithmic_bandwidth(double total_bytes, std::size_t gpu_count, double completion_s) {
  if (gpu_count == 0 || !(completion_s > 0.0)) {
    throw ValidationError("algorithmic_bandwidth: GPU count and completion time must be positive");
  }
  return total_bytes / (static_cast<double>(gpu_count) * completion_s);
}

BoundsReport bounds_report(const ServerMatrix& s, const Topology& t, double completion_s) {
  BoundsReport r;
  r.terms = fast_worstcase_terms(s, t);
  r.t_optimal = r.terms.scaleout;
  r.t_fast_worstcase = r.terms.total();
  r.ratio_bound = ratio_bound(t);
  r.assumption_holds = intra_assumption_holds(s);
  const double bytes = static_cast<double>(s.grand_total());
  r.algo_bw = bytes > 0.0 ? algorithmic_bandwidth(bytes, t.gpu_count(), completion_s) : 0.0;
  return r;
}

}  // namespace fasta2a
