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

#include "fasta2a/birkhoff.hpp"

#include <algorithm>
#include <limits>
#include <memory>
#include <string>

namespace fasta2a {
namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Hopcroft-Karp over a dense support table. Neighbours are scanned in column
// order so the result is a pure function of (support, hint).
class HopcroftKarp {
 public:
  HopcroftKarp(std::span<const bool> support, std::size_t n)
      : support_(support), n_(n), match_row_(n, kNone), match_col_(n, kNone), dist_(n) {}

  void seed(std::span<const std::size_t> hint) {
    for (std::size_t r = 0; r < n_ && r < hint.size(); ++r) {
      const std::size_t c = hint[r];
      if (c == kNone || c >= n_ || !edge(r, c) || match_col_[c] != kNone) continue;
      match_row_[r] = c;
      match_col_[c] = r;
    }
  }

  std::size_t run() {
    std::size_t matched = 0;
    for (std::size_t r = 0; r < n_; ++r) matched += match_row_[r] != kNone;
    while (bfs()) {
      for (std::size_t r = 0; r < n_; ++r) {
        if (match_row_[r] == kNone && dfs(r)) ++matched;
      }
    }
    return matched;
  }

  std::vector<std::size_t> take() { return std::move(match_row_); }

 private:
  bool edge(std::size_t r, std::size_t c) const { return support_[r * n_ + c]; }

  bool bfs() {
    std::vector<std::size_t> queue;
    queue.reserve(n_);
    for (std::size_t r = 0; r < n_; ++r) {
      if (match_row_[r] == kNone) {
        dist_[r] = 0;
        queue.push_back(r);
      } else {
        dist_[r] = kNone;
      }
    }
    bool found_free = false;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t r = queue[head];
      for (std::size_t c = 0; c < n_; ++c) {
        if (!edge(r, c)) continue;
        const std::size_t next = match_col_[c];
        if (next == kNone) {
          found_free = true;
        } else if (dist_[next] == kNone) {
          dist_[next] = dist_[r] + 1;
          queue.push_back(next);
        }
      }
    }
    return found_free;
  }

  bool dfs(std::size_t r) {
    for (std::size_t c = 0; c < n_; ++c) {
      if (!edge(r, c)) continue;
      const std::size_t next = match_col_[c];
      if (next == kNone || (dist_[next] == dist_[r] + 1 && dfs(next))) {
        match_row_[r] = c;
        match_col_[c] = r;
        return true;
      }
    }
    dist_[r] = kNone;
    return false;
  }

  std::span<const bool> support_;
  std::size_t n_;
  std::vector<std::size_t> match_row_;
  std::vector<std::size_t> match_col_;
  std::vector<std::size_t> dist_;
};

void check_equal_line_sums(const ByteGrid& g, Bytes& common) {
  const std::size_t n = g.rows();
  common = n == 0 ? 0 : g.row_sum(0);
  for (std::size_t i = 0; i < n; ++i) {
    if (g.row_sum(i) != common || g.col_sum(i) != common) {
      throw ValidationError("matrix is not doubly stochastic: line " + std::to_string(i) +
                            " does not sum to " + std::to_string(common));
    }
  }
}

}  // namespace

Bytes PermutationStage::max_edge_bytes() const {
  Bytes best = 0;
  for (const auto& e : edges) best = std::max(best, e.bytes);
  return best;
}

Embedding embed_doubly_stochastic(const ServerMatrix& s) {
  const std::size_t n = s.size();
  Embedding out;
  out.embedded = s.off_diagonal();
  out.aux = ByteGrid(n, n);
  out.common_sum = max_rc(s);

  std::vector<Bytes> row_deficit(n), col_deficit(n);
  for (std::size_t i = 0; i < n; ++i) {
    row_deficit[i] = out.common_sum - s.off_row_sum(i);
    col_deficit[i] = out.common_sum - s.off_col_sum(i);
  }
  std::size_t r = 0, c = 0;
  while (r < n && c < n) {
    const Bytes x = std::min(row_deficit[r], col_deficit[c]);
    out.aux(r, c) += x;
    out.embedded(r, c) += x;
    row_deficit[r] -= x;
    col_deficit[c] -= x;
    if (row_deficit[r] == 0) ++r;
    if (c < n && col_deficit[c] == 0) ++c;
  }
  return out;
}

std::vector<std::size_t> find_perfect_matching(std::span<const bool> support, std::size_t n) {
  return find_perfect_matching(support, n, {});
}

std::vector<std::size_t> find_perfect_matching(std::span<const bool> support, std::size_t n,
                                               std::span<const std::size_t> hint) {
  if (support.size() != n * n) throw ValidationError("support table must be n x n");
  HopcroftKarp hk(support, n);
  hk.seed(hint);
  if (hk.run() != n) {
    throw InvariantError("no perfect matching on the residual support");
  }
  return hk.take();
}

std::vector<PermutationStage> decompose(const ByteGrid& embedded) {
  if (embedded.rows() != embedded.cols()) throw ValidationError("matrix must be square");
  const std::size_t n = embedded.rows();
  Bytes common = 0;
  check_equal_line_sums(embedded, common);

  ByteGrid residual = embedded;
  // std::vector<bool> has no contiguous storage, so keep a plain buffer.
  auto support = std::make_unique<bool[]>(n * n);
  std::vector<std::size_t> matching;
  std::vector<PermutationStage> stages;
  Bytes remaining = common;

  while (remaining > 0) {
    for (std::size_t k = 0; k < n * n; ++k) support[k] = residual.data()[k] > 0;
    matching = find_perfect_matching(std::span<const bool>(support.get(), n * n), n, matching);

    Bytes w = std::numeric_limits<Bytes>::max();
    for (std::size_t r = 0; r < n; ++r) w = std::min(w, residual(r, matching[r]));
    PermutationStage stage;
    stage.weight = w;
    stage.edges.reserve(n);
    for (std::size_t r = 0; r < n; ++r) {
      residual(r, matching[r]) -= w;
      stage.edges.push_back({r, matching[r], w});
    }
    stages.push_back(std::move(stage));
    remaining -= w;
    if (stages.size() > stage_bound(n)) {
      throw InvariantError("Birkhoff stage count exceeded n^2 - 2n + 2");
    }
  }
  for (Bytes v : residual.data()) {
    if (v != 0) throw InvariantError("residual not exhausted after decomposition");
  }
  return stages;
}

Decomposition birkhoff_decompose(const ServerMatrix& s) {
  Embedding e = embed_doubly_stochastic(s);
  Decomposition d;
  d.stages = decompose(e.embedded);
  d.aux = std::move(e.aux);
  d.common_sum = e.common_sum;
  return d;
}

std::vector<PermutationStage> strip_auxiliary(std::span<const PermutationStage> stages,
                                              const ByteGrid& aux, const ServerMatrix& s) {
  const std::size_t n = s.size();
  if (aux.rows() != n || aux.cols() != n) throw ValidationError("aux table shape mismatch");
  ByteGrid aux_left = aux;
  ByteGrid real_seen(n, n);
  std::vector<PermutationStage> out;
  out.reserve(stages.size());

  for (const auto& stage : stages) {
    PermutationStage stripped;
    stripped.weight = stage.weight;
    for (const auto& e : stage.edges) {
      if (e.src >= n || e.dst >= n) throw ValidationError("stage edge out of range");
      Bytes& pending_aux = aux_left(e.src, e.dst);
      const Bytes virt = std::min(pending_aux, e.bytes);
      pending_aux -= virt;
      const Bytes real = e.bytes - virt;
      if (real == 0) continue;
      if (e.src == e.dst) {
        throw InvariantError("diagonal edge carries real bytes");
      }
      real_seen(e.src, e.dst) = checked_add(real_seen(e.src, e.dst), real);
      stripped.edges.push_back({e.src, e.dst, real});
    }
    if (!stripped.edges.empty()) out.push_back(std::move(stripped));
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Bytes want = i == j ? 0 : s(i, j);
      if (real_seen(i, j) != want || aux_left(i, j) != 0) {
        throw InvariantError("auxiliary strip does not conserve pair (" + std::to_string(i) +
                             "," + std::to_string(j) + ")");
      }
    }
  }
  return out;
}

std::vector<PermutationStage> sort_stages_ascending(std::vector<PermutationStage> stages) {
  std::stable_sort(stages.begin(), stages.end(),
                   [](const PermutationStage& a, const PermutationStage& b) {
                     return a.weight < b.weight;
                   });
  return stages;
}

ByteGrid reconstruct(std::span<const PermutationStage> stages, std::size_t n) {
  ByteGrid g(n, n);
  for (const auto& stage : stages) {
    for (const auto& e : stage.edges) {
      if (e.src >= n || e.dst >= n) throw ValidationError("stage edge out of range");
      g(e.src, e.dst) = checked_add(g(e.src, e.dst), e.bytes);
    }
  }
  return g;
}

}  // namespace fasta2a
