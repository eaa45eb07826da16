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

// Correspondence-distortion bounds between finite samples of
// [P x S^1(r)] / Z_p and of the surface (P, h_kappa) it collapses to.
//
// The cyclic group acts by theta -> theta + 2 pi m1 q / p on P and by
// s -> s + 2 pi m2 q / p on the circle, whose metric is r^2 ds^2. Quotient
// distances minimise the product distance over the orbit, and the natural
// correspondence sends (rho, theta, s) to the slice point
// (rho, theta - kappa s). Half the distortion of that correspondence bounds
// the Gromov-Hausdorff distance.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "collapse_lab/surface_graph.hpp"
#include "collapse_lab/warped_metric.hpp"

namespace collapse_lab {

inline constexpr double kTriangleTolerance = 1e-9;

class FiniteMetricSpace {
 public:
  // `distances` is row-major n x n. Throws DomainError unless the diagonal
  // is zero, entries are finite and nonnegative and the matrix is symmetric
  // to 1e-12.
  FiniteMetricSpace(std::vector<std::string> labels, std::vector<double> distances);

  std::size_t size() const { return labels_.size(); }
  double operator()(std::size_t i, std::size_t j) const { return d_[i * size() + j]; }
  std::span<const double> row(std::size_t i) const { return {d_.data() + i * size(), size()}; }
  const std::vector<std::string>& labels() const { return labels_; }

  struct AxiomReport {
    double max_diagonal = 0.0;
    double max_asymmetry = 0.0;
    // max over triples of d(i,k) - d(i,j) - d(j,k), clamped at 0.
    double max_triangle_violation = 0.0;
  };
  AxiomReport check_axioms() const;
  AxiomReport check_axioms_sampled(std::size_t triples, std::uint64_t seed) const;

 private:
  std::vector<std::string> labels_;
  std::vector<double> d_;
};

// A point of P: grid row (0 for a bare circle) and angle.
struct SurfacePoint {
  int row = 0;
  double theta = 0.0;
};

struct ProductPoint {
  SurfacePoint x;
  double s = 0.0;  // circle coordinate in [0, 2 pi), metric r^2 ds^2
};

// Data of the diagonal action: Z_p, or the circle approximated by Z_T.
class QuotientSpec {
 public:
  static QuotientSpec cyclic(double r, int m1, int m2, int p);
  static QuotientSpec circle(double r, int m1, int m2, int steps = 512);

  double r() const { return r_; }
  int m1() const { return m1_; }
  int m2() const { return m2_; }
  double kappa() const { return static_cast<double>(m1_) / m2_; }
  // p for Z_p, T for the discretised circle.
  int order() const { return order_; }
  bool is_circle() const { return circle_; }
  // Group parameter tau_q = 2 pi q / order().
  double tau(int q) const;

 private:
  QuotientSpec(double r, int m1, int m2, int order, bool circle);
  double r_;
  int m1_;
  int m2_;
  int order_;
  bool circle_;
};

// Distance on S^1(r) between angles a and b: r * min(|b - a|, 2 pi - |b - a|)
// after reducing mod 2 pi.
double circle_distance(double r, double a, double b);
double product_distance(double d_p, double d_circle);

// d_P(a, R_angle b): distance from a to b rotated by `angle`.
using RotationOracle =
    std::function<double(const SurfacePoint& a, const SurfacePoint& b, double angle)>;

// Distance on a bare circle S^1(radius) (P itself a circle, row ignored).
RotationOracle circle_oracle(double radius);

// Distance on a sampled surface from graph shortest paths. Angles must land
// on the graph's theta grid.
class SurfaceOracle {
 public:
  // Runs one shortest-path search per source row (all rows when empty);
  // distances are only available from those rows.
  explicit SurfaceOracle(std::shared_ptr<const SurfaceGraph> graph,
                         std::vector<int> source_rows = {});

  const SurfaceGraph& graph() const { return *graph_; }
  double operator()(const SurfacePoint& a, const SurfacePoint& b, double angle) const;
  // Column offset for an angle on the grid; throws when it is off-grid.
  int column_of(double angle) const;
  bool has_source(int row) const;
  // Distance from (row_a, col 0) to (row_b, col); row_a must be a source.
  double lookup(int row_a, int row_b, int col) const {
    return table_.at(static_cast<std::size_t>(source_of_row_[static_cast<std::size_t>(row_a)]),
                     graph_->node_index(row_b, col));
  }
  RotationOracle as_oracle() const;

 private:
  std::shared_ptr<const SurfaceGraph> graph_;
  std::vector<int> source_of_row_;
  DistanceTable table_;
};

// min over the group of product_distance(d_P(a, g b), d_circle(a, g b)).
double quotient_distance(const QuotientSpec& spec, const ProductPoint& a, const ProductPoint& b,
                         const RotationOracle& d_p);

struct Correspondence {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;

  bool covers(std::size_t nx, std::size_t ny) const;
  Correspondence inverse() const;
};

struct SliceCorrespondence {
  Correspondence correspondence;
  // Distinct slice points, indexed by the second entry of each pair.
  std::vector<SurfacePoint> limit_points;
};

// (rho, theta, s) -> (rho, theta - kappa s mod 2 pi): where the circle orbit
// through the product point meets the slice s = 0.
SliceCorrespondence natural_correspondence(std::span<const ProductPoint> sample,
                                           const QuotientSpec& spec);

// max over related pairs (i, j), (i', j') of |d_X(i, i') - d_Y(j, j')|.
double distortion(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
                  const Correspondence& C);

struct GridSize {
  int n_rho = 0;
  int n_theta = 0;
  int n_s = 0;
};

struct CollapseConfig {
  WarpCurve surface = WarpCurve::sinh(1.0);
  double rho_max = 2.0;
  double r = 1.0;
  int m1 = 1;
  int m2 = 1;
  std::vector<int> p_values;
  GridSize grid{96, 96, 64};
  GridSize sample{12, 12, 8};
  Stencil stencil{};
  std::uint64_t seed = 0;
};

struct CollapseRow {
  int p = 0;
  double distortion = 0.0;
  double gh_upper_bound = 0.0;
  double grid_floor_estimate = 0.0;
};

// Shared state of one experiment: the product sample, the limit surface and
// its refinement, and shortest-path tables on all three graphs.
//
// The theta grid of P is refined from grid.n_theta to the least multiple on
// which every group rotation used (the p values plus `extra_orders`) and
// every correspondence shift land on nodes, so all distances are exact graph
// distances.
class CollapseSetup {
 public:
  explicit CollapseSetup(const CollapseConfig& config, std::span<const int> extra_orders = {});

  int theta_resolution() const { return theta_res_; }
  std::span<const ProductPoint> sample() const { return sample_; }
  const SliceCorrespondence& slice() const { return slice_; }
  const RotSymMetric& limit_metric() const { return limit_metric_; }
  const SurfaceOracle& surface_oracle() const { return *p_oracle_; }

  FiniteMetricSpace quotient_space(const QuotientSpec& spec) const;
  const FiniteMetricSpace& limit_space() const { return *limit_space_; }
  // Limit sample distances on the grid refined 2x in both directions.
  const FiniteMetricSpace& refined_limit_space() const { return *refined_limit_space_; }

  double distortion_for(const QuotientSpec& spec) const;
  // Distortion between the limit sample on the experiment grid and on its
  // 2x refinement (identity correspondence).
  double grid_floor() const;

  QuotientSpec cyclic(int p) const;
  QuotientSpec circle(int steps) const;

 private:
  CollapseConfig config_;
  int theta_res_ = 0;
  RotSymMetric p_metric_;
  RotSymMetric limit_metric_;
  std::vector<ProductPoint> sample_;
  SliceCorrespondence slice_;
  std::unique_ptr<SurfaceOracle> p_oracle_;
  std::unique_ptr<FiniteMetricSpace> limit_space_;
  std::unique_ptr<FiniteMetricSpace> refined_limit_space_;
};

std::vector<CollapseRow> collapse_experiment(const CollapseConfig& config);

}  // namespace collapse_lab
