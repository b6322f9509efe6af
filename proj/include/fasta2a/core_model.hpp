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

// Cluster shape and traffic matrices at GPU and server granularity.
//
// A two-tier cluster has `n_servers` servers with `gpus_per_server` GPUs
// each. GPU g lives on server g / m with local index g % m. The GPU-level
// demand matrix is cut into m x m tiles, one per ordered server pair; the
// server-level matrix holds the tile totals.

#ifndef FASTA2A_CORE_MODEL_HPP_
#define FASTA2A_CORE_MODEL_HPP_

#include <cstddef>
#include <initializer_list>
#include <type_traits>
#include <vector>

#include "fasta2a/error.hpp"

namespace fasta2a {

struct Topology {
  std::size_t n_servers = 4;
  std::size_t gpus_per_server = 8;
  double scaleup_bw = 450e9;   // bytes/s per GPU, full duplex
  double scaleout_bw = 50e9;   // bytes/s per GPU NIC, full duplex
  double wakeup_delay = 0.0;   // seconds per synchronized transfer step

  std::size_t gpu_count() const { return n_servers * gpus_per_server; }
};

// Returns `t` unchanged or throws ValidationError naming the failing field.
Topology validate_topology(const Topology& t);

// Dense row-major table of byte counts.
class ByteGrid {
 public:
  ByteGrid() = default;
  ByteGrid(std::size_t rows, std::size_t cols, Bytes fill = 0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  ByteGrid(std::initializer_list<std::initializer_list<Bytes>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  Bytes& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Bytes operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Bytes row_sum(std::size_t r) const;
  Bytes col_sum(std::size_t c) const;
  Bytes total() const;

  const std::vector<Bytes>& data() const { return data_; }

  friend bool operator==(const ByteGrid&, const ByteGrid&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Bytes> data_;
};

// (n*m) x (n*m) GPU-to-GPU byte matrix. Entry (g, h) is what GPU g sends to
// GPU h. The diagonal is always zero.
class DemandMatrix {
 public:
  DemandMatrix() = default;
  // Throws ValidationError if `sizes` is not (n*m)-square or has a nonzero
  // diagonal.
  DemandMatrix(std::size_t n_servers, std::size_t gpus_per_server, ByteGrid sizes);
  static DemandMatrix zeros(std::size_t n_servers, std::size_t gpus_per_server);

  std::size_t n_servers() const { return n_; }
  std::size_t gpus_per_server() const { return m_; }
  std::size_t gpu_count() const { return n_ * m_; }

  Bytes operator()(std::size_t g, std::size_t h) const { return sizes_(g, h); }
  const ByteGrid& sizes() const { return sizes_; }
  Bytes total() const { return sizes_.total(); }

  // Throws ValidationError unless the shape matches `t`.
  void check_matches(const Topology& t) const;

  friend bool operator==(const DemandMatrix&, const DemandMatrix&) = default;

 private:
  template <typename Grid>
  friend class BasicTileView;
  friend class DemandMatrixBuilder;

  std::size_t n_ = 0;
  std::size_t m_ = 0;
  ByteGrid sizes_;
};

// m x m window onto one ordered server pair of a demand matrix. The
// mutable flavour is only handed out by DemandMatrixBuilder.
template <typename Grid>
class BasicTileView {
 public:
  BasicTileView(Grid& sizes, std::size_t m, std::size_t src_server, std::size_t dst_server)
      : sizes_(&sizes), m_(m), src_(src_server), dst_(dst_server) {}

  std::size_t src_server() const { return src_; }
  std::size_t dst_server() const { return dst_; }
  std::size_t size() const { return m_; }
  bool is_intra() const { return src_ == dst_; }

  Bytes operator()(std::size_t p, std::size_t q) const {
    return (*sizes_)(src_ * m_ + p, dst_ * m_ + q);
  }
  template <typename G = Grid>
    requires(!std::is_const_v<G>)
  Bytes& operator()(std::size_t p, std::size_t q) {
    return (*sizes_)(src_ * m_ + p, dst_ * m_ + q);
  }

  Bytes row_sum(std::size_t p) const {
    Bytes s = 0;
    for (std::size_t q = 0; q < m_; ++q) s += (*this)(p, q);
    return s;
  }
  Bytes col_sum(std::size_t q) const {
    Bytes s = 0;
    for (std::size_t p = 0; p < m_; ++p) s += (*this)(p, q);
    return s;
  }
  Bytes total() const {
    Bytes s = 0;
    for (std::size_t p = 0; p < m_; ++p) s += row_sum(p);
    return s;
  }
  ByteGrid to_grid() const {
    ByteGrid g(m_, m_);
    for (std::size_t p = 0; p < m_; ++p)
      for (std::size_t q = 0; q < m_; ++q) g(p, q) = (*this)(p, q);
    return g;
  }

 private:
  Grid* sizes_;
  std::size_t m_;
  std::size_t src_;
  std::size_t dst_;
};

using TileView = BasicTileView<const ByteGrid>;
using MutableTileView = BasicTileView<ByteGrid>;

// Throws ValidationError if either server index is out of range.
TileView tile(const DemandMatrix& d, std::size_t src_server, std::size_t dst_server);

// Assembles a DemandMatrix through mutable tile views, then checks the
// invariants once on build().
class DemandMatrixBuilder {
 public:
  DemandMatrixBuilder(std::size_t n_servers, std::size_t gpus_per_server);
  explicit DemandMatrixBuilder(DemandMatrix start);

  MutableTileView tile(std::size_t src_server, std::size_t dst_server);
  Bytes& at(std::size_t g, std::size_t h) { return m_.sizes_(g, h); }
  DemandMatrix build() &&;

 private:
  DemandMatrix m_;
};

// n x n server-level totals. Off-diagonal (i, j) is T_ij; the diagonal holds
// the intra-server volume S_i for reporting and is read as zero by every
// inter-server algorithm.
class ServerMatrix {
 public:
  ServerMatrix() = default;
  explicit ServerMatrix(ByteGrid totals);

  std::size_t size() const { return totals_.rows(); }
  Bytes operator()(std::size_t i, std::size_t j) const { return totals_(i, j); }
  const ByteGrid& totals() const { return totals_; }

  Bytes intra(std::size_t i) const { return totals_(i, i); }
  // Copy of the totals with the diagonal zeroed.
  ByteGrid off_diagonal() const;
  Bytes off_row_sum(std::size_t i) const;
  Bytes off_col_sum(std::size_t j) const;
  Bytes off_diagonal_max() const;
  Bytes grand_total() const { return totals_.total(); }

  friend bool operator==(const ServerMatrix&, const ServerMatrix&) = default;

 private:
  ByteGrid totals_;
};

ServerMatrix reduce_to_server_level(const DemandMatrix& d, const Topology& t);

// Largest off-diagonal row or column sum; the scale-out lower-bound witness.
Bytes max_rc(const ServerMatrix& s);
// Largest row or column sum over every entry of `g`, diagonal included.
Bytes max_line_sum(const ByteGrid& g);

}  // namespace fasta2a

#endif  // FASTA2A_CORE_MODEL_HPP_
