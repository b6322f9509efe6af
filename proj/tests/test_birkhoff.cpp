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
#include <memory>
#include <numeric>
#include <set>
#include <tuple>

#include "fasta2a/birkhoff.hpp"
#include "fasta2a/workload.hpp"
#include "oracles.hpp"

namespace fasta2a {
namespace {

std::vector<bool> support_of(const oracle::Mat& m) {
  std::vector<bool> s;
  for (const auto& row : m)
    for (auto v : row) s.push_back(v > 0);
  return s;
}

std::vector<std::size_t> match(const std::vector<bool>& s, std::size_t n) {
  std::unique_ptr<bool[]> buf(new bool[s.size()]);
  std::copy(s.begin(), s.end(), buf.get());
  return find_perfect_matching(std::span<const bool>(buf.get(), s.size()), n);
}

// Independent reconstruction: sum of weight-scaled permutation matrices.
oracle::Mat rebuild(const std::vector<PermutationStage>& stages, std::size_t n) {
  oracle::Mat out(n, std::vector<std::uint64_t>(n));
  for (const auto& st : stages)
    for (const auto& e : st.edges) out[e.src][e.dst] += e.bytes;
  return out;
}

TEST(Embed, TwoByTwoDeficit) {
  Embedding e = embed_doubly_stochastic(ServerMatrix(ByteGrid{{0, 5}, {3, 0}}));
  EXPECT_EQ(e.common_sum, 5u);
  EXPECT_EQ(e.embedded, (ByteGrid{{0, 5}, {5, 0}}));
  EXPECT_EQ(e.aux, (ByteGrid{{0, 0}, {2, 0}}));
}

TEST(Embed, DoublyStochasticNeedsNoAux) {
  Embedding e = embed_doubly_stochastic(ServerMatrix(ByteGrid{{0, 2, 3}, {3, 0, 2}, {2, 3, 0}}));
  EXPECT_EQ(e.aux.total(), 0u);
  EXPECT_EQ(e.common_sum, 5u);
}

TEST(Embed, BottleneckColumnSetsCommonSum) {
  // Column 3 receives 14, every other line is lighter.
  ServerMatrix s(ByteGrid{{0, 1, 2, 5}, {2, 0, 1, 4}, {1, 2, 0, 5}, {3, 1, 2, 0}});
  Embedding e = embed_doubly_stochastic(s);
  EXPECT_EQ(e.common_sum, 14u);
}

TEST(Embed, ZeroMatrix) {
  Embedding e = embed_doubly_stochastic(ServerMatrix(ByteGrid(3, 3)));
  EXPECT_EQ(e.common_sum, 0u);
  EXPECT_EQ(e.embedded.total(), 0u);
}

TEST(Embed, RandomLineSumsEqualMaxRc) {
  SplitMix64 rng(21);
  for (int k = 0; k < 300; ++k) {
    const std::size_t n = 2 + rng.below(12);
    oracle::Mat s = oracle::random_server_matrix(rng, n, 500);
    for (std::size_t i = 0; i < n; ++i) s[i][i] = rng.below(100);  // diagonal ignored
    Embedding e = embed_doubly_stochastic(ServerMatrix(oracle::to_grid(s)));
    const std::uint64_t want = oracle::max_rc(s);
    EXPECT_EQ(e.common_sum, want);
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_EQ(e.embedded.row_sum(i), want);
      EXPECT_EQ(e.embedded.col_sum(i), want);
      for (std::size_t j = 0; j < n; ++j) {
        EXPECT_EQ(e.embedded(i, j), (i == j ? 0 : s[i][j]) + e.aux(i, j));
      }
    }
  }
}

TEST(Matching, Identity) {
  std::vector<bool> s = {true, false, false, false, true, false, false, false, true};
  EXPECT_EQ(match(s, 3), (std::vector<std::size_t>{0, 1, 2}));
}

TEST(Matching, FullSupportGivesPermutation) {
  auto m = match(std::vector<bool>(9, true), 3);
  std::set<std::size_t> cols(m.begin(), m.end());
  EXPECT_EQ(cols.size(), 3u);
  EXPECT_EQ(m, match(std::vector<bool>(9, true), 3));
}

TEST(Matching, SwapIsTheOnlyOption) {
  EXPECT_EQ(match({false, true, true, false}, 2), (std::vector<std::size_t>{1, 0}));
}

TEST(Matching, MissingMatchingIsAnInvariantFailure) {
  EXPECT_THROW(match({true, true, false, false}, 2), InvariantError);
}

TEST(Matching, RespectsSupportOnRandomPatterns) {
  SplitMix64 rng(8);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = 2 + rng.below(10);
    // A hidden permutation guarantees a perfect matching exists.
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    std::vector<bool> s(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i * n + perm[i]] = true;
      for (std::size_t j = 0; j < n; ++j)
        if (rng.below(3) == 0) s[i * n + j] = true;
    }
    auto m = match(s, n);
    std::set<std::size_t> cols(m.begin(), m.end());
    EXPECT_EQ(cols.size(), n);
    for (std::size_t i = 0; i < n; ++i) EXPECT_TRUE(s[i * n + m[i]]);
  }
}

TEST(Decompose, ScaledIdentity) {
  auto stages = decompose(ByteGrid{{4, 0, 0}, {0, 4, 0}, {0, 0, 4}});
  ASSERT_EQ(stages.size(), 1u);
  EXPECT_EQ(stages[0].weight, 4u);
  for (const auto& e : stages[0].edges) EXPECT_EQ(e.src, e.dst);
}

TEST(Decompose, SwapMatrix) {
  auto stages = decompose(ByteGrid{{0, 5}, {5, 0}});
  ASSERT_EQ(stages.size(), 1u);
  EXPECT_EQ(stages[0].weight, 5u);
  EXPECT_EQ(stages[0].edges[0].dst, 1u);
  EXPECT_EQ(stages[0].edges[1].dst, 0u);
}

TEST(Decompose, RejectsNonDoublyStochastic) {
  EXPECT_THROW(decompose(ByteGrid{{0, 5}, {3, 0}}), ValidationError);
}

TEST(Decompose, RandomExactAndBounded) {
  SplitMix64 rng(99);
  for (int k = 0; k < 300; ++k) {
    const std::size_t n = 2 + rng.below(14);
    oracle::Mat s = oracle::random_server_matrix(rng, n, rng.below(2) ? 1'000'000 : 7);
    Decomposition d = birkhoff_decompose(ServerMatrix(oracle::to_grid(s)));
    EXPECT_LE(d.stages.size(), stage_bound(n));
    Bytes weights = 0;
    for (const auto& st : d.stages) {
      weights += st.weight;
      EXPECT_EQ(st.edges.size(), n);
      for (const auto& e : st.edges) EXPECT_EQ(e.bytes, st.weight);
    }
    EXPECT_EQ(weights, oracle::max_rc(s));
    Embedding e = embed_doubly_stochastic(ServerMatrix(oracle::to_grid(s)));
    EXPECT_EQ(rebuild(d.stages, n), oracle::to_mat(e.embedded));
  }
}

TEST(Decompose, Deterministic) {
  SplitMix64 rng(5);
  oracle::Mat s = oracle::random_server_matrix(rng, 9, 10000);
  ServerMatrix sm(oracle::to_grid(s));
  auto a = birkhoff_decompose(sm).stages;
  auto b = birkhoff_decompose(sm).stages;
  EXPECT_EQ(a, b);
}

TEST(Strip, NoAuxLeavesStagesAlone) {
  ServerMatrix s(ByteGrid{{0, 2, 3}, {3, 0, 2}, {2, 3, 0}});
  Decomposition d = birkhoff_decompose(s);
  EXPECT_EQ(strip_auxiliary(d.stages, d.aux, s), d.stages);
}

TEST(Strip, AuxConsumedBeforeRealBytes) {
  ServerMatrix s(ByteGrid{{0, 5}, {3, 0}});
  Decomposition d = birkhoff_decompose(s);
  auto stripped = strip_auxiliary(d.stages, d.aux, s);
  ASSERT_EQ(stripped.size(), 1u);
  EXPECT_EQ(stripped[0].weight, 5u);
  ASSERT_EQ(stripped[0].edges.size(), 2u);
  EXPECT_EQ(stripped[0].edges[0], (StageEdge{0, 1, 5}));
  EXPECT_EQ(stripped[0].edges[1], (StageEdge{1, 0, 3}));
}

TEST(Strip, ConservesEveryPairAndLeavesPartialStages) {
  SplitMix64 rng(17);
  bool saw_partial = false;
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = 2 + rng.below(10);
    oracle::Mat s = oracle::random_server_matrix(rng, n, 1000);
    ServerMatrix sm(oracle::to_grid(s));
    Decomposition d = birkhoff_decompose(sm);
    auto stripped = strip_auxiliary(d.stages, d.aux, sm);
    EXPECT_EQ(rebuild(stripped, n), oracle::to_mat(sm.off_diagonal()));
    for (const auto& st : stripped) {
      EXPECT_FALSE(st.edges.empty());
      if (st.edges.size() < n) saw_partial = true;
      for (const auto& e : st.edges) {
        EXPECT_NE(e.src, e.dst);
        EXPECT_LE(e.bytes, st.weight);
      }
    }
  }
  EXPECT_TRUE(saw_partial);
}

TEST(Strip, MismatchedAuxIsAnInvariantFailure) {
  ServerMatrix s(ByteGrid{{0, 5}, {3, 0}});
  Decomposition d = birkhoff_decompose(s);
  ByteGrid wrong(2, 2);
  EXPECT_THROW(strip_auxiliary(d.stages, wrong, s), InvariantError);
}

TEST(Sort, Ascending) {
  std::vector<PermutationStage> st = {{5, {{0, 1, 5}}}, {2, {{1, 0, 2}}}, {7, {{0, 1, 7}}}};
  auto out = sort_stages_ascending(st);
  EXPECT_EQ(out[0].weight, 2u);
  EXPECT_EQ(out[1].weight, 5u);
  EXPECT_EQ(out[2].weight, 7u);
}

TEST(Sort, EqualWeightsKeepInputOrder) {
  std::vector<PermutationStage> st = {{3, {{1, 0, 3}}}, {3, {{0, 1, 3}}}, {3, {{2, 0, 3}}}};
  EXPECT_EQ(sort_stages_ascending(st), st);
}

TEST(Sort, RandomListIsMonotoneAndPreservesMultiset) {
  SplitMix64 rng(4);
  std::vector<PermutationStage> st;
  for (int k = 0; k < 100; ++k) {
    const Bytes w = rng.below(20);
    st.push_back({w, {{static_cast<std::size_t>(k % 5), static_cast<std::size_t>(k % 5 + 1), w}}});
  }
  auto out = sort_stages_ascending(st);
  for (std::size_t k = 1; k < out.size(); ++k) EXPECT_LE(out[k - 1].weight, out[k].weight);
  auto key = [](const PermutationStage& a, const PermutationStage& b) {
    return std::tie(a.weight, a.edges[0].src) < std::tie(b.weight, b.edges[0].src);
  };
  auto x = st, y = out;
  std::sort(x.begin(), x.end(), key);
  std::sort(y.begin(), y.end(), key);
  EXPECT_EQ(x, y);
}

TEST(StageBound, Values) {
  EXPECT_EQ(stage_bound(2), 2u);
  EXPECT_EQ(stage_bound(3), 5u);
  EXPECT_EQ(stage_bound(16), 226u);
}

}  // namespace
}  // namespace fasta2a
