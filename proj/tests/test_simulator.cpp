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

#include <cmath>
#include <limits>

#include "fasta2a/bounds.hpp"
#include "fasta2a/pipeline.hpp"
#include "fasta2a/simulator.hpp"
#include "fasta2a/workload.hpp"
#include "oracles.hpp"

namespace fasta2a {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

TEST(StepCost, UnitTransmission) {
  Topology t{2, 1, 50e9, 50e9, 0.0};
  EXPECT_DOUBLE_EQ(step_cost(50e9, 50e9, t), 1.0);
}

TEST(StepCost, AbsentStepIsFree) {
  Topology t{2, 1, 50e9, 50e9, 1e-3};
  EXPECT_EQ(step_cost(0, 50e9, t), 0.0);
}

TEST(StepCost, WakeupPlusTransmission) {
  Topology t{2, 1, 50e9, 12.5e9, 10e-6};
  EXPECT_NEAR(step_cost(1e9, 12.5e9, t), 0.080010, 1e-12);
}

TEST(StepCost, RejectsNonPositiveBandwidth) {
  Topology t;
  EXPECT_THROW(step_cost(1, 0.0, t), ValidationError);
}

TEST(IntraPhase, SingleMove) {
  Topology t{2, 4, 100.0, 10.0, 0.5};
  std::vector<IntraMove> mv = {{1, 0, 3, 0, 200}};
  EXPECT_DOUBLE_EQ(intra_phase_time(mv, t), 0.5 + 2.0);
}

TEST(IntraPhase, OneGpuShedsMostOfATile) {
  const double b1 = 90.0;
  Topology t{2, 8, b1, 10.0, 0.0};
  const Bytes tile = 800;
  std::vector<IntraMove> mv;
  for (std::size_t q = 1; q < 8; ++q) mv.push_back({0, 0, q, 1, tile / 8});
  EXPECT_DOUBLE_EQ(intra_phase_time(mv, t), 7.0 * tile / (8.0 * b1));
}

TEST(IntraPhase, BalancedRingCostsOneShare) {
  Topology t{3, 4, 100.0, 10.0, 0.0};
  std::vector<IntraMove> mv;
  for (std::size_t s = 0; s < 3; ++s)
    for (std::size_t p = 0; p < 4; ++p) mv.push_back({s, p, (p + 1) % 4, (s + 1) % 3, 50});
  EXPECT_DOUBLE_EQ(intra_phase_time(mv, t), static_cast<double>(oracle::busiest_gpu(mv)) / 100.0);
  EXPECT_DOUBLE_EQ(intra_phase_time(mv, t), 0.5);
}

TEST(IntraPhase, RejectsMovesOutsideAServer) {
  Topology t{2, 2, 100.0, 10.0, 0.0};
  std::vector<IntraMove> mv = {{0, 0, 0, 1, 5}};
  EXPECT_THROW(intra_phase_time(mv, t), ValidationError);
  mv = {{2, 0, 1, 1, 5}};
  EXPECT_THROW(intra_phase_time(mv, t), ValidationError);
  EXPECT_EQ(intra_phase_time({}, t), 0.0);
}

TEST(SimulateFast, ZeroWorkload) {
  Topology t{3, 2, 450e9, 50e9, 1e-5};
  Schedule s = synthesize_fast(DemandMatrix::zeros(3, 2), t);
  EXPECT_EQ(simulate(s, t).total, 0.0);
}

TEST(SimulateFast, InfiniteScaleUpReachesOptimum) {
  Topology t{3, 2, kInf, 1.0, 0.0};
  DemandMatrix d(3, 2, oracle::to_grid(oracle::three_server_example()));
  Schedule s = synthesize_fast(d, t);
  Timeline tl = simulate(s, t);
  EXPECT_DOUBLE_EQ(tl.total, 8.0);
  EXPECT_DOUBLE_EQ(optimal_time(s.servers, t), 8.0);
}

TEST(SimulateFast, RejectsUnsortedStages) {
  Topology t{3, 2, 450e9, 50e9, 0.0};
  DemandMatrix d = gen_uniform(4, t, 100);
  Schedule s = synthesize_fast(d, t);
  ASSERT_GE(s.stages.size(), 2u);
  auto rev = s.stages;
  std::reverse(rev.begin(), rev.end());
  if (rev.front().weight != rev.back().weight) {
    EXPECT_THROW(simulate_fast(s.plan, rev, t), ValidationError);
  }
}

TEST(SimulateFast, SlotsFollowOverlapRule) {
  Topology t{4, 4, 200e9, 50e9, 2e-6};
  DemandMatrix d = gen_zipf(6, t, 0.7, 4'000'000'000);
  Schedule s = synthesize_fast(d, t);
  Timeline tl = simulate(s, t);
  ASSERT_EQ(tl.slots.size(), s.stages.size());
  double total = tl.t_balance;
  for (std::size_t k = 0; k < tl.slots.size(); ++k) {
    const double hidden = k == 0 ? tl.t_intra_a2a : tl.redistribution[k - 1];
    EXPECT_DOUBLE_EQ(tl.slots[k], std::max(tl.scaleout[k], hidden));
    total += tl.slots[k];
  }
  total += tl.redistribution.back();
  EXPECT_DOUBLE_EQ(tl.total, total);
  for (std::size_t k = 0; k < s.stages.size(); ++k) {
    EXPECT_DOUBLE_EQ(tl.scaleout[k],
                     t.wakeup_delay + static_cast<double>(s.stages[k].max_edge_bytes()) / 4.0 / 50e9);
  }
}

TEST(SimulateFast, NeverBeatsOptimumAndFasterScaleUpNeverHurts) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Topology t{4, 8, 100e9, 50e9, 0.0};
    DemandMatrix d = gen_zipf(seed, t, 0.5, 8'000'000'000);
    Schedule s = synthesize_fast(d, t);
    double prev = kInf;
    for (double b1 : {100e9, 200e9, 450e9, 900e9, 5000e9}) {
      t.scaleup_bw = b1;
      const double total = simulate(s, t).total;
      EXPECT_GE(total, optimal_time(s.servers, t) * (1 - 1e-12));
      EXPECT_LE(total, prev);
      prev = total;
    }
  }
}

TEST(SimulateFast, NonFinalRedistributionHiddenWhenScaleUpIsFastEnough) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Topology t{5, 4, 4.5 * 50e9, 50e9, 0.0};  // ratio above m - 1
    DemandMatrix d = gen_zipf(seed, t, 0.8, 5'000'000'000);
    Timeline tl = simulate(synthesize_fast(d, t), t);
    for (std::size_t k = 1; k < tl.slots.size(); ++k) EXPECT_EQ(tl.slots[k], tl.scaleout[k]);
  }
}

TEST(SimulateSpreadout, UniformMatchesFast) {
  Topology t{4, 2, 450e9, 50e9, 0.0};
  ServerMatrix s(ByteGrid{{0, 6, 6, 6}, {6, 0, 6, 6}, {6, 6, 0, 6}, {6, 6, 6, 0}});
  EXPECT_DOUBLE_EQ(simulate_spreadout(s, t).total, optimal_time(s, t));
}

TEST(SimulateSpreadout, ThreeByThreeUnits) {
  Topology t{3, 1, 1.0, 1.0, 0.0};
  ServerMatrix s(ByteGrid{{0, 5, 3}, {1, 0, 4}, {6, 2, 0}});
  EXPECT_DOUBLE_EQ(simulate_spreadout(s, t).total, 9.0);
  EXPECT_DOUBLE_EQ(optimal_time(s, t), 8.0);
}

TEST(SimulateSpreadout, WakeupOnlyOnNonEmptyStages) {
  Topology t{3, 1, 1.0, 1.0, 0.25};
  ServerMatrix s(ByteGrid{{0, 5, 0}, {0, 0, 4}, {6, 0, 0}});
  EXPECT_DOUBLE_EQ(simulate_spreadout(s, t).total, 6.25);
}

TEST(SimulateSpreadout, NeverBelowFastScaleOut) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Topology t{6, 4, 450e9, 50e9, 0.0};
    DemandMatrix d = gen_zipf(seed, t, 0.8, 1'000'000'000);
    Schedule f = synthesize_fast(d, t);
    EXPECT_GE(simulate_spreadout(f.servers, t).total, simulate(f, t).scaleout_sum() * (1 - 1e-12));
  }
}

TEST(SimulateSpreadout, RawModeUsesBusiestGpu) {
  Topology t{2, 2, 450.0, 50.0, 0.0};
  oracle::Mat g = {{0, 0, 100, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}};
  DemandMatrix d(2, 2, oracle::to_grid(g));
  EXPECT_DOUBLE_EQ(simulate_spreadout_raw(d, t).total, 2.0);
  EXPECT_DOUBLE_EQ(simulate_spreadout(reduce_to_server_level(d, t), t).total, 1.0);
}

}  // namespace
}  // namespace fasta2a
