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

#include "collapse_lab/surface_graph.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <numbers>
#include <queue>
#include <string>
#include <utility>

#include "collapse_lab/error.hpp"
#include "collapse_lab/parallel.hpp"

namespace collapse_lab {
namespace {

using Kind = DomainError::Kind;

// Warp values this small are treated as a pole.
constexpr double kPoleWarp = 1e-14;

}  // namespace

SurfaceGraph::SurfaceGraph(const RotSymMetric& metric, int n_rho, int n_theta, Stencil stencil)
    : n_rho_(n_rho), n_theta_(n_theta), stencil_(stencil) {
  if (n_rho < 8 || n_theta < 8) {
    throw DomainError(Kind::kInvalidArgument, "surface grid needs at least 8 x 8 nodes");
  }
  if (stencil.rho < 1 || stencil.theta < 1 || stencil.rho >= n_rho ||
      2 * stencil.theta >= n_theta) {
    throw DomainError(Kind::kInvalidArgument, "stencil reach must be >= 1 and fit the grid");
  }
  const Interval& dom = metric.domain();
  if (!dom.bounded() || dom.hi_open) {
    throw DomainError(Kind::kOutOfDomain,
                      "surface graph needs a closed bounded rho interval; truncate the metric");
  }
  rho0_ = dom.lo;
  rho_hi_ = dom.hi;
  rho_step_ = (dom.hi - dom.lo) / (n_rho - 1);
  const double dtheta = theta_step();

  std::vector<double> f(static_cast<std::size_t>(n_rho));
  for (int i = 0; i < n_rho; ++i) f[static_cast<std::size_t>(i)] = eval_warp(metric, rho(i)).f;
  pole_lo_ = std::abs(f.front()) <= kPoleWarp;
  pole_hi_ = std::abs(f.back()) <= kPoleWarp;

  circle_w_.resize(static_cast<std::size_t>(n_rho));
  for (int i = 0; i < n_rho; ++i) {
    const double fi = f[static_cast<std::size_t>(i)];
    const bool pole = is_pole_row(i);
    if (!pole && !(fi > 0.0)) {
      throw DomainError(Kind::kInvalidArgument,
                        "warp must be positive away from poles (rho=" + std::to_string(rho(i)) + ")");
    }
    circle_w_[static_cast<std::size_t>(i)] = pole ? 0.0 : fi * dtheta;
  }
  std::vector<double> f_mid(static_cast<std::size_t>(n_rho - 1));
  for (int m = 0; m + 1 < n_rho; ++m) {
    f_mid[static_cast<std::size_t>(m)] = eval_warp(metric, rho0_ + (m + 0.5) * rho_step_).f;
  }

  for (int di = -stencil.rho; di <= stencil.rho; ++di) {
    for (int dj = -stencil.theta; dj <= stencil.theta; ++dj) {
      if (std::gcd(std::abs(di), std::abs(dj)) == 1) offsets_.push_back({di, dj});
    }
  }
  weights_.assign(static_cast<std::size_t>(n_rho) * offsets_.size(), 0.0);
  for (int i = 0; i < n_rho; ++i) {
    if (is_pole_row(i)) continue;
    for (std::size_t k = 0; k < offsets_.size(); ++k) {
      const auto [di, dj] = offsets_[k];
      const int target = i + di;
      if (target < 0 || target >= n_rho) continue;
      double w = 0.0;
      if (di == 0) {
        w = std::abs(dj) * circle_w_[static_cast<std::size_t>(i)];
      } else if (is_pole_row(target)) {
        if (dj == 0) w = std::abs(di) * rho_step_;
      } else {
        const double strip_dtheta = dj * dtheta / std::abs(di);
        for (int m = std::min(i, target); m < std::max(i, target); ++m) {
          const double fm = f_mid[static_cast<std::size_t>(m)];
          w += std::sqrt(rho_step_ * rho_step_ + fm * fm * strip_dtheta * strip_dtheta);
        }
      }
      weights_[static_cast<std::size_t>(i) * offsets_.size() + k] = w;
    }
  }
}

double SurfaceGraph::edge_weight(int row, int di, int dj) const {
  for (std::size_t k = 0; k < offsets_.size(); ++k) {
    if (offsets_[k].di == di && offsets_[k].dj == dj) {
      return weights_[static_cast<std::size_t>(row) * offsets_.size() + k];
    }
  }
  return 0.0;
}

double SurfaceGraph::rho(int row) const {
  // The last row sits exactly on the upper end of the domain.
  if (row == n_rho_ - 1) return rho_hi_;
  return rho0_ + row * rho_step_;
}

double SurfaceGraph::theta_step() const { return 2.0 * std::numbers::pi / n_theta_; }

bool SurfaceGraph::is_pole_row(int row) const {
  return (row == 0 && pole_lo_) || (row == n_rho_ - 1 && pole_hi_);
}

std::size_t SurfaceGraph::node_count() const {
  return static_cast<std::size_t>(n_rho_) * static_cast<std::size_t>(n_theta_);
}

std::size_t SurfaceGraph::node_index(int row, int col) const {
  if (is_pole_row(row)) col = 0;
  return static_cast<std::size_t>(row) * static_cast<std::size_t>(n_theta_) +
         static_cast<std::size_t>(col);
}

DistanceTable surface_distances(const SurfaceGraph& graph, std::span<const std::size_t> sources) {
  if (sources.empty()) throw DomainError(Kind::kInvalidArgument, "no distance sources given");
  const std::size_t nodes = graph.node_count();
  for (std::size_t s : sources) {
    if (s >= nodes || s != graph.node_index(static_cast<int>(s / graph.n_theta()),
                                            static_cast<int>(s % graph.n_theta()))) {
      throw DomainError(Kind::kInvalidArgument, "distance source is not a graph node");
    }
  }
  DistanceTable table(sources.size(), nodes);
  parallel_for(sources.size(), [&](std::size_t k) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::span<double> dist = table.row(k);
    std::fill(dist.begin(), dist.end(), kInf);
    using Entry = std::pair<double, std::size_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    dist[sources[k]] = 0.0;
    heap.emplace(0.0, sources[k]);
    while (!heap.empty()) {
      const auto [d, u] = heap.top();
      heap.pop();
      if (d > dist[u]) continue;
      graph.for_each_neighbor(u, [&](std::size_t v, double w) {
        const double nd = d + w;
        if (nd < dist[v]) {
          dist[v] = nd;
          heap.emplace(nd, v);
        }
      });
    }
    // Alias columns of pole rows to the pole node.
    for (int row = 0; row < graph.n_rho(); ++row) {
      if (!graph.is_pole_row(row)) continue;
      const double d = dist[graph.node_index(row, 0)];
      for (int c = 0; c < graph.n_theta(); ++c) {
        dist[static_cast<std::size_t>(row) * graph.n_theta() + c] = d;
      }
    }
    for (double d : dist) {
      if (!std::isfinite(d)) {
        throw DomainError(Kind::kConnectivity, "surface graph is not connected");
      }
    }
  });
  return table;
}

}  // namespace collapse_lab
