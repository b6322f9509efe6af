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

// Deterministic demand-matrix generators.
//
// All randomness comes from SplitMix64:
//   state += 0x9E3779B97F4A7C15
//   z = (state ^ (state >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   return z ^ (z >> 31)
// so the same (seed, parameters) yields the same matrix everywhere.

#ifndef FASTA2A_WORKLOAD_HPP_
#define FASTA2A_WORKLOAD_HPP_

#include <cstdint>
#include <string>

#include "fasta2a/core_model.hpp"

namespace fasta2a {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform on [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

// Off-diagonal entries uniform on [0, 2 * mean_bytes].
DemandMatrix gen_uniform(std::uint64_t seed, const Topology& t, Bytes mean_bytes);

// Off-diagonal GPU pairs get weight 1 / rank^skew under a seeded random
// ranking; bytes are floor(total * w / W) with the leftover handed out one
// byte at a time in rank order.
DemandMatrix gen_zipf(std::uint64_t seed, const Topology& t, double skew, Bytes total_bytes);

// Every cross-server tile holds tile_bytes in its (0, 0) cell.
DemandMatrix gen_adversarial(const Topology& t, Bytes tile_bytes);

// Reads the CSV or JSON matrix format, picked by content.
DemandMatrix load_trace(const std::string& path);

}  // namespace fasta2a

#endif  // FASTA2A_WORKLOAD_HPP_
