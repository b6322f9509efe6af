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

#include "fasta2a/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace fasta2a {

Topology validate_topology(const Topology& t) {
  if (t.n_servers < 2) {
    throw ValidationError("n_servers: need at least 2 servers, got " +
                          std::to_string(t.n_servers));
  }
  if (t.gpus_per_server < 1) {
    throw ValidationError("gpus_per_server: need at least 1 GPU per server");
  }
  if (!(t.scaleout_bw > 0.0) || std::isnan(t.scaleout_bw)) {
    throw ValidationError("scaleout_bw: must be positive");
  }
  if (!(t.scaleup_bw >= t.scaleout_bw)) {
    throw ValidationError("scaleup_bw: inverted tiers, scale-up bandwidth must be >= scale-out");
  }
  if (!(t.wakeup_delay >= 0.0) || !std::isfinite(t.wakeup_delay)) {
    throw ValidationError("wakeup_delay: must be a finite non-negative number");
  }
  return t;
}

ByteGrid::ByteGrid(std::initializer_list<std::initializer_list<Bytes>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw ValidationError("ragged ByteGrid initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Bytes ByteGrid::row_sum(std::size_t r) const {
  Bytes s = 0;
  for (std::size_t c = 0; c < cols_; ++c) s = checked_add(s, (*this)(r, c));
  return s;
}

Bytes ByteGrid::col_sum(std::size_t c) const {
  Bytes s = 0;
  for (std::size_t r = 0; r < rows_; ++r) s = checked_add(s, (*this)(r, c));
  return s;
}

Bytes ByteGrid::total() const {
  Bytes s = 0;
  for (Bytes v : data_) s = checked_add(s, v);
  return s;
}

DemandMatrix::DemandMatrix(std::size_t n_servers, std::size_t gpus_per_server, ByteGrid sizes)
    : n_(n_servers), m_(gpus_per_server), sizes_(std::move(sizes)) {
  const std::size_t g = n_ * m_;
  if (sizes_.rows() != g || sizes_.cols() != g) {
    throw ValidationError("demand matrix must be " + std::to_string(g) + "x" +
                          std::to_string(g) + " for n=" + std::to_string(n_) +
                          " m=" + std::to_string(m_) + ", got " +
                          std::to_string(sizes_.rows()) + "x" + std::to_string(sizes_.cols()));
  }
  for (std::size_t i = 0; i < g; ++i) {
    if (sizes_(i, i) != 0) {
      throw ValidationError("demand matrix diagonal must be zero (GPU " + std::to_string(i) + ")");
    }
  }
  // Every partial sum taken later is bounded by this one.
  (void)sizes_.total();
}

DemandMatrix DemandMatrix::zeros(std::size_t n_servers, std::size_t gpus_per_server) {
  const std::size_t g = n_servers * gpus_per_server;
  return DemandMatrix(n_servers, gpus_per_server, ByteGrid(g, g));
}

void DemandMatrix::check_matches(const Topology& t) const {
  if (t.n_servers != n_ || t.gpus_per_server != m_) {
    throw ValidationError("dimension mismatch: matrix is n=" + std::to_string(n_) +
                          " m=" + std::to_string(m_) + ", topology is n=" +
                          std::to_string(t.n_servers) + " m=" + std::to_string(t.gpus_per_server));
  }
}

TileView tile(const DemandMatrix& d, std::size_t src_server, std::size_t dst_server) {
  if (src_server >= d.n_servers() || dst_server >= d.n_servers()) {
    throw ValidationError("tile index (" + std::to_string(src_server) + "," +
                          std::to_string(dst_server) + ") out of range for " +
                          std::to_string(d.n_servers()) + " servers");
  }
  return TileView(d.sizes(), d.gpus_per_server(), src_server, dst_server);
}

DemandMatrixBuilder::DemandMatrixBuilder(std::size_t n_servers, std::size_t gpus_per_server)
    : m_(DemandMatrix::zeros(n_servers, gpus_per_server)) {}

DemandMatrixBuilder::DemandMatrixBuilder(DemandMatrix start) : m_(std::move(start)) {}

MutableTileView DemandMatrixBuilder::tile(std::size_t src_server, std::size_t dst_server) {
  if (src_server >= m_.n_ || dst_server >= m_.n_) {
    throw ValidationError("tile index out of range");
  }
  return MutableTileView(m_.sizes_, m_.m_, src_server, dst_server);
}

DemandMatrix DemandMatrixBuilder::build() && {
  return DemandMatrix(m_.n_, m_.m_, std::move(m_.sizes_));
}

ServerMatrix::ServerMatrix(ByteGrid totals) : totals_(std::move(totals)) {
  if (totals_.rows() != totals_.cols()) {
    throw ValidationError("server matrix must be square");
  }
  (void)totals_.total();
}

ByteGrid ServerMatrix::off_diagonal() const {
  ByteGrid g = totals_;
  for (std::size_t i = 0; i < g.rows(); ++i) g(i, i) = 0;
  return g;
}

Bytes ServerMatrix::off_row_sum(std::size_t i) const { return totals_.row_sum(i) - totals_(i, i); }

Bytes ServerMatrix::off_col_sum(std::size_t j) const { return totals_.col_sum(j) - totals_(j, j); }

Bytes ServerMatrix::off_diagonal_max() const {
  Bytes best = 0;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j)
      if (i != j) best = std::max(best, totals_(i, j));
  return best;
}

ServerMatrix reduce_to_server_level(const DemandMatrix& d, const Topology& t) {
  d.check_matches(t);
  const std::size_t n = d.n_servers();
  ByteGrid totals(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) totals(i, j) = tile(d, i, j).total();
  return ServerMatrix(std::move(totals));
}

Bytes max_rc(const ServerMatrix& s) {
  Bytes best = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    best = std::max({best, s.off_row_sum(i), s.off_col_sum(i)});
  }
  return best;
}

Bytes max_line_sum(const ByteGrid& g) {
  Bytes best = 0;
  for (std::size_t i = 0; i < g.rows(); ++i) best = std::max(best, g.row_sum(i));
  for (std::size_t j = 0; j < g.cols(); ++j) best = std::max(best, g.col_sum(j));
  return best;
}

}  // namespace fasta2a
