// Copyright 2026 The Collapse Lab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Grid-graph discretisation of a rotationally symmetric surface.
//
// Nodes sit at (rho_i, theta_j) with rho_i spanning the closed metric domain
// and theta_j = 2 pi j / n_theta. Edges join nodes whose index offset lies in
// the stencil (theta wraps); an edge is weighted by the Riemannian length of
// its coordinate segment, summed over row strips with the metric frozen at
// each strip's midpoint. A row where f vanishes (a smooth pole) is a single
// node joined radially to the rows within reach.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "collapse_lab/warped_metric.hpp"

namespace collapse_lab {

// How far an edge may jump. Reach (1, 1) is the 8-neighbour grid; larger
// reaches add every offset (di, dj) with |di| <= rho, |dj| <= theta and
// gcd(|di|, |dj|) = 1, which cuts the directional bias of the graph metric
// on cells that are far from square.
struct Stencil {
  int rho = 1;
  int theta = 1;
};

class SurfaceGraph {
 public:
  // Throws DomainError for unbounded or half-open domains, grids smaller
  // than 8 x 8, a bad stencil, or a warp that is not positive away from
  // poles.
  SurfaceGraph(const RotSymMetric& metric, int n_rho, int n_theta, Stencil stencil = {});

  int n_rho() const { return n_rho_; }
  int n_theta() const { return n_theta_; }
  Stencil stencil() const { return stencil_; }
  double rho(int row) const;
  double rho_step() const { return rho_step_; }
  double theta_step() const;
  // True when the row degenerates to a point (f = 0 there).
  bool is_pole_row(int row) const;

  std::size_t node_count() const;
  // Canonical node; every column of a pole row maps to the same node.
  std::size_t node_index(int row, int col) const;

  double circle_weight(int row) const { return circle_w_[static_cast<std::size_t>(row)]; }
  // Metric length of the segment from (row, c) to (row + di, c + dj), or 0
  // when the offset is not part of the stencil.
  double edge_weight(int row, int di, int dj) const;

  // Calls fn(neighbour, weight) for every edge at `node`.
  template <typename Fn>
  void for_each_neighbor(std::size_t node, Fn&& fn) const;

 private:
  struct Offset {
    int di;
    int dj;
  };

  int n_rho_;
  int n_theta_;
  Stencil stencil_;
  double rho0_;
  double rho_hi_;
  double rho_step_;
  bool pole_lo_;
  bool pole_hi_;
  std::vector<double> circle_w_;
  std::vector<Offset> offsets_;
  // weights_[row * offsets_.size() + k]; 0 where the edge leaves the grid.
  std::vector<double> weights_;
};

class DistanceTable {
 public:
  DistanceTable(std::size_t sources, std::size_t nodes)
      : nodes_(nodes), data_(sources * nodes) {}

  std::size_t source_count() const { return nodes_ == 0 ? 0 : data_.size() / nodes_; }
  std::size_t node_count() const { return nodes_; }
  double at(std::size_t source, std::size_t node) const { return data_[source * nodes_ + node]; }
  std::span<const double> row(std::size_t source) const {
    return {data_.data() + source * nodes_, nodes_};
  }
  std::span<double> row(std::size_t source) { return {data_.data() + source * nodes_, nodes_}; }

 private:
  std::size_t nodes_;
  std::vector<double> data_;
};

// Shortest-path distances from each source to every node, one row of
// node_count() entries per source.
DistanceTable surface_distances(const SurfaceGraph& graph, std::span<const std::size_t> sources);

template <typename Fn>
void SurfaceGraph::for_each_neighbor(std::size_t node, Fn&& fn) const {
  const int n = n_theta_;
  const int row = static_cast<int>(node / static_cast<std::size_t>(n));
  const int col = static_cast<int>(node % static_cast<std::size_t>(n));
  if (is_pole_row(row)) {
    // Radial lines out of a pole are geodesics.
    for (int k = 1; k <= stencil_.rho; ++k) {
      for (int adj : {row - k, row + k}) {
        if (adj < 0 || adj >= n_rho_) continue;
        const double w = k * rho_step_;
        if (is_pole_row(adj)) {
          fn(node_index(adj, 0), w);
          continue;
        }
        for (int c = 0; c < n; ++c) fn(node_index(adj, c), w);
      }
    }
    return;
  }
  const double* w = &weights_[static_cast<std::size_t>(row) * offsets_.size()];
  for (std::size_t k = 0; k < offsets_.size(); ++k) {
    if (w[k] == 0.0) continue;
    int c = (col + offsets_[k].dj) % n;
    if (c < 0) c += n;
    fn(node_index(row + offsets_[k].di, c), w[k]);
  }
}

}  // namespace collapse_lab
