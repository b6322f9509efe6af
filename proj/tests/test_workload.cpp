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

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>

#include "fasta2a/intra_balancer.hpp"
#include "fasta2a/pipeline.hpp"
#include "fasta2a/serialization.hpp"
#include "fasta2a/workload.hpp"
#include "oracles.hpp"

namespace fasta2a {
namespace {

std::vector<Bytes> off_diagonal(const DemandMatrix& d) {
  std::vector<Bytes> out;
  for (std::size_t g = 0; g < d.gpu_count(); ++g)
    for (std::size_t h = 0; h < d.gpu_count(); ++h)
      if (g != h) out.push_back(d(g, h));
  return out;
}

TEST(SplitMix64, ReferenceSequence) {
  // First outputs for seed 1234567 of the published reference generator.
  SplitMix64 rng(1234567);
  EXPECT_EQ(rng.next(), 6457827717110365317ULL);
  EXPECT_EQ(rng.next(), 3203168211198807973ULL);
  EXPECT_EQ(rng.next(), 9817491932198370423ULL);
}

TEST(GenUniform, DeterministicPerSeed) {
  Topology t{4, 8, 450e9, 50e9, 0.0};
  EXPECT_EQ(gen_uniform(7, t, 50'000'000), gen_uniform(7, t, 50'000'000));
  EXPECT_NE(gen_uniform(7, t, 50'000'000), gen_uniform(8, t, 50'000'000));
}

TEST(GenUniform, RangeAndMean) {
  Topology t{4, 8, 450e9, 50e9, 0.0};
  const Bytes mean = 50'000'000;
  double sum = 0;
  std::size_t count = 0;
  for (std::uint64_t seed = 0; seed < 11; ++seed) {
    for (Bytes v : off_diagonal(gen_uniform(seed, t, mean))) {
      EXPECT_LE(v, 2 * mean);
      sum += static_cast<double>(v);
      ++count;
    }
  }
  ASSERT_GE(count, 10000u);
  EXPECT_NEAR(sum / count, static_cast<double>(mean), 0.05 * mean);
}

TEST(GenUniform, Errors) {
  Topology t{4, 8, 450e9, 50e9, 0.0};
  EXPECT_THROW(gen_uniform(1, t, 0), ValidationError);
  EXPECT_THROW(gen_uniform(1, {1, 8, 450e9, 50e9, 0.0}, 5), ValidationError);
}

TEST(GenZipf, ExactTotalAndDeterminism) {
  Topology t{4, 8, 450e9, 50e9, 0.0};
  for (double skew : {0.0, 0.4, 0.8, 0.99}) {
    DemandMatrix d = gen_zipf(3, t, skew, 123'456'789);
    EXPECT_EQ(d.total(), 123'456'789u);
    EXPECT_EQ(d, gen_zipf(3, t, skew, 123'456'789));
  }
}

TEST(GenZipf, ZeroSkewIsFlat) {
  Topology t{3, 4, 450e9, 50e9, 0.0};
  auto v = off_diagonal(gen_zipf(9, t, 0.0, 1'000'003));
  auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  EXPECT_LE(*hi - *lo, 1u);
}

TEST(GenZipf, PeakToMedianGrowsWithSkew) {
  Topology t{4, 8, 450e9, 50e9, 0.0};
  double prev = 0.0;
  for (double skew : {0.0, 0.2, 0.4, 0.6, 0.8, 0.95}) {
    double ratio = 0.0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      auto v = off_diagonal(gen_zipf(seed, t, skew, 10'000'000'000));
      std::sort(v.begin(), v.end());
      ratio += static_cast<double>(v.back()) / static_cast<double>(v[v.size() / 2]);
    }
    EXPECT_GT(ratio, prev);
    prev = ratio;
  }
}

TEST(GenZipf, Errors) {
  Topology t{4, 8, 450e9, 50e9, 0.0};
  EXPECT_THROW(gen_zipf(1, t, 1.0, 100), ValidationError);
  EXPECT_THROW(gen_zipf(1, t, -0.1, 100), ValidationError);
  EXPECT_THROW(gen_zipf(1, t, 0.5, 0), ValidationError);
}

TEST(GenAdversarial, OneCellPerCrossTile) {
  Topology t{4, 8, 450e9, 50e9, 0.0};
  DemandMatrix d = gen_adversarial(t, 800);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      TileView v = tile(d, i, j);
      EXPECT_EQ(v.total(), i == j ? 0u : 800u);
      if (i != j) EXPECT_EQ(v(0, 0), 800u);
    }
}

TEST(GenAdversarial, BalancesSevenEighthsOfEachTile) {
  Topology t{4, 8, 450e9, 50e9, 0.0};
  BalancePlan p = build_balance_plan(gen_adversarial(t, 800), t);
  std::map<std::pair<std::size_t, std::size_t>, Bytes> per_pair;
  for (const auto& mv : p.moves()) per_pair[{mv.server, mv.peer_server}] += mv.bytes;
  EXPECT_EQ(per_pair.size(), 12u);
  for (const auto& [k, v] : per_pair) EXPECT_EQ(v, 700u);
}

TEST(GenAdversarial, SingleGpuServersNeedNoMoves) {
  Topology t{4, 1, 450e9, 50e9, 0.0};
  EXPECT_TRUE(build_balance_plan(gen_adversarial(t, 800), t).moves().empty());
}

TEST(GenAdversarial, StaysWithinRatioBoundOnTestbed) {
  Topology t{4, 8, 450e9, 50e9, 0.0};
  Schedule s = synthesize_fast(gen_adversarial(t, 1'000'000'000), t);
  SimulationReport r = evaluate(s, t);
  EXPECT_LE(r.ratio, 2.12);
  EXPECT_TRUE(r.bounds.assumption_holds);
}

TEST(LoadTrace, ReadsBothFormats) {
  Topology t{2, 2, 450e9, 50e9, 0.0};
  DemandMatrix d = gen_uniform(4, t, 30);
  const std::string csv = ::testing::TempDir() + "trace.csv";
  const std::string js = ::testing::TempDir() + "trace.json";
  write_matrix_file(csv, d);
  write_matrix_file(js, d);
  EXPECT_EQ(load_trace(csv), d);
  EXPECT_EQ(load_trace(js), d);
  EXPECT_THROW(load_trace(::testing::TempDir() + "missing.csv"), ValidationError);
}

}  // namespace
}  // namespace fasta2a
