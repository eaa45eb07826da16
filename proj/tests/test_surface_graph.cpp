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

#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>

#include <gtest/gtest.h>

#include "collapse_lab/error.hpp"
#include "collapse_lab/surface_graph.hpp"

namespace collapse_lab {
namespace {

constexpr double kPi = std::numbers::pi;

double dist(const SurfaceGraph& g, int r0, int c0, int r1, int c1) {
  const std::size_t src[] = {g.node_index(r0, c0)};
  return surface_distances(g, src).at(0, g.node_index(r1, c1));
}

RotSymMetric cylinder(double length) {
  return RotSymMetric(WarpCurve::constant(1.0), {0.0, length}, false);
}

TEST(SurfaceGraph, FlatCylinderMeridianIsExact) {
  const SurfaceGraph g(cylinder(1.0), 33, 64);
  EXPECT_NEAR(dist(g, 0, 0, 32, 0), 1.0, 1e-14);
}

TEST(SurfaceGraph, HalfCircumferenceWithinMetricationBound) {
  const SurfaceGraph g(cylinder(1.0), 33, 64);
  const double d = dist(g, 16, 0, 16, 32);
  EXPECT_GE(d, kPi - 1e-12);
  EXPECT_LE(d, 1.08 * kPi);
}

TEST(SurfaceGraph, SphereMeridian) {
  const double delta = 0.05;
  const SurfaceGraph g(RotSymMetric(WarpCurve::sin(), {delta, kPi - delta}, false), 65, 64);
  EXPECT_NEAR(dist(g, 0, 0, 64, 0), kPi - 2 * delta, 1e-12);
  // Through the opposite meridian is no shorter.
  EXPECT_GE(dist(g, 0, 0, 64, 32), kPi - 2 * delta - 1e-12);
}

TEST(SurfaceGraph, PoleRowIsOneNode) {
  const SurfaceGraph g(RotSymMetric::truncated(WarpCurve::sinh(), 1.0), 20, 32);
  EXPECT_TRUE(g.is_pole_row(0));
  EXPECT_FALSE(g.is_pole_row(19));
  EXPECT_EQ(g.node_index(0, 5), g.node_index(0, 0));
  const std::size_t src[] = {g.node_index(0, 0)};
  const DistanceTable t = surface_distances(g, src);
  // Geodesic circles about the pole are exact: d = rho.
  for (int row = 0; row < 20; ++row) {
    for (int c : {0, 7, 19}) {
      EXPECT_NEAR(t.at(0, static_cast<std::size_t>(row) * 32 + c), g.rho(row), 1e-14);
    }
  }
}

TEST(SurfaceGraph, RejectsBadInput) {
  EXPECT_THROW(SurfaceGraph(cylinder(1.0), 4, 64), DomainError);
  EXPECT_THROW(SurfaceGraph(RotSymMetric::natural(WarpCurve::sinh()), 16, 16), DomainError);
  EXPECT_THROW(SurfaceGraph(cylinder(1.0), 16, 16, {0, 1}), DomainError);
  const SurfaceGraph g(cylinder(1.0), 16, 16);
  const std::size_t bad[] = {g.node_count()};
  EXPECT_THROW(surface_distances(g, bad), DomainError);
}

// Floyd-Warshall over the explicit edge list.
std::vector<double> all_pairs(const SurfaceGraph& g) {
  const std::size_t n = g.node_count();
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> d(n * n, inf);
  for (std::size_t u = 0; u < n; ++u) {
    d[u * n + u] = 0.0;
    g.for_each_neighbor(u, [&](std::size_t v, double w) { d[u * n + v] = std::min(d[u * n + v], w); });
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i * n + j] = std::min(d[i * n + j], d[i * n + k] + d[k * n + j]);
  return d;
}

TEST(SurfaceGraph, DijkstraMatchesFloydWarshall) {
  for (Stencil s : {Stencil{1, 1}, Stencil{2, 3}}) {
    const SurfaceGraph g(RotSymMetric::truncated(WarpCurve::sinh(), 1.5), 8, 12, s);
    const std::vector<double> oracle = all_pairs(g);
    const std::size_t n = g.node_count();
    std::vector<std::size_t> sources;
    for (int row = 0; row < g.n_rho(); ++row) sources.push_back(g.node_index(row, 0));
    const DistanceTable t = surface_distances(g, sources);
    for (std::size_t k = 0; k < sources.size(); ++k) {
      for (int row = 0; row < g.n_rho(); ++row) {
        for (int c = 0; c < g.n_theta(); ++c) {
          const std::size_t node = g.node_index(row, c);
          EXPECT_NEAR(t.at(k, static_cast<std::size_t>(row) * 12 + c), oracle[sources[k] * n + node],
                      1e-13);
        }
      }
    }
  }
}

TEST(SurfaceGraph, EdgesAreSymmetric) {
  const SurfaceGraph g(RotSymMetric::truncated(WarpCurve::tanh(), 2.0), 12, 16, {3, 4});
  for (int row = 1; row < 12; ++row) {
    for (int di = -3; di <= 3; ++di) {
      for (int dj = -4; dj <= 4; ++dj) {
        if (row + di <= 0 || row + di >= 12) continue;
        EXPECT_EQ(g.edge_weight(row, di, dj), g.edge_weight(row + di, -di, -dj));
      }
    }
  }
}

TEST(SurfaceGraph, WiderStencilReducesMetrication) {
  // Flat cylinder: the true distance is the Euclidean one on the unrolled strip.
  const double true_d = std::hypot(0.5, kPi / 4);
  const SurfaceGraph narrow(cylinder(1.0), 65, 128);
  const SurfaceGraph wide(cylinder(1.0), 65, 128, {3, 3});
  const double e1 = std::abs(dist(narrow, 16, 0, 48, 16) - true_d);
  const double e3 = std::abs(dist(wide, 16, 0, 48, 16) - true_d);
  EXPECT_LT(e3, e1);
  EXPECT_LT(e3 / true_d, 0.02);
}

TEST(SurfaceGraph, RefinementStudyOnFlatCylinder) {
  const SurfaceGraph coarse(cylinder(1.0), 17, 32);
  const SurfaceGraph fine(cylinder(1.0), 33, 64);
  const int pairs[][4] = {{0, 0, 16, 5}, {4, 0, 12, 16}, {8, 3, 8, 19}, {2, 0, 14, 9}};
  for (const auto& p : pairs) {
    const double a = dist(coarse, p[0], p[1], p[2], p[3]);
    const double b = dist(fine, 2 * p[0], 2 * p[1], 2 * p[2], 2 * p[3]);
    EXPECT_LE(std::abs(a - b) / b, 0.05);
  }
}

TEST(SurfaceGraph, ResultIndependentOfThreadCount) {
  const SurfaceGraph g(RotSymMetric::truncated(WarpCurve::sinh(), 2.0), 24, 48);
  std::vector<std::size_t> sources;
  for (int row = 0; row < 24; row += 3) sources.push_back(g.node_index(row, 0));
  setenv("COLLAPSE_LAB_THREADS", "1", 1);
  const DistanceTable one = surface_distances(g, sources);
  setenv("COLLAPSE_LAB_THREADS", "4", 1);
  const DistanceTable four = surface_distances(g, sources);
  unsetenv("COLLAPSE_LAB_THREADS");
  for (std::size_t k = 0; k < sources.size(); ++k) {
    for (std::size_t v = 0; v < g.node_count(); ++v) EXPECT_EQ(one.at(k, v), four.at(k, v));
  }
}

}  // namespace
}  // namespace collapse_lab
