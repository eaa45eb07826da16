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

#include "collapse_lab/gh_collapse.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "collapse_lab/error.hpp"
#include "collapse_lab/kernels.hpp"
#include "collapse_lab/parallel.hpp"

namespace collapse_lab {
namespace {

using Kind = DomainError::Kind;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Finest theta grid the experiment will build.
constexpr long kMaxThetaResolution = 1L << 16;

double wrap_angle(double a) {
  double w = std::fmod(a, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  return w;
}

int wrap_col(long c, int n) {
  long w = c % n;
  if (w < 0) w += n;
  return static_cast<int>(w);
}

std::vector<int> evenly_spaced(int count, int span, bool include_end) {
  std::vector<int> out;
  const int denom = include_end ? std::max(count - 1, 1) : count;
  for (int k = 0; k < count; ++k) {
    out.push_back(static_cast<int>(std::lround(static_cast<double>(k) * span / denom)));
  }
  return out;
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw DomainError(Kind::kInvalidArgument, msg);
}

}  // namespace

// ---------------------------------------------------------------------------
// FiniteMetricSpace

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> labels, std::vector<double> d)
    : labels_(std::move(labels)), d_(std::move(d)) {
  const std::size_t n = labels_.size();
  require(d_.size() == n * n, "distance matrix size does not match the label count");
  for (std::size_t i = 0; i < n; ++i) {
    if ((*this)(i, i) != 0.0) throw DomainError(Kind::kInvalidArgument, "nonzero diagonal");
    for (std::size_t j = 0; j < n; ++j) {
      const double v = (*this)(i, j);
      if (!std::isfinite(v) || v < 0.0) {
        throw DomainError(Kind::kInvalidArgument, "distances must be finite and nonnegative");
      }
      if (std::abs(v - (*this)(j, i)) > 1e-12) {
        throw DomainError(Kind::kInvalidArgument, "distance matrix is not symmetric");
      }
    }
  }
}

FiniteMetricSpace::AxiomReport FiniteMetricSpace::check_axioms() const {
  AxiomReport rep;
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    rep.max_diagonal = std::max(rep.max_diagonal, std::abs((*this)(i, i)));
    const auto ri = row(i);
    for (std::size_t j = 0; j < n; ++j) {
      rep.max_asymmetry = std::max(rep.max_asymmetry, std::abs(ri[j] - (*this)(j, i)));
      const double dij = ri[j];
      const auto rj = row(j);
      double worst = 0.0;
      for (std::size_t k = 0; k < n; ++k) worst = std::max(worst, ri[k] - dij - rj[k]);
      rep.max_triangle_violation = std::max(rep.max_triangle_violation, worst);
    }
  }
  return rep;
}

FiniteMetricSpace::AxiomReport FiniteMetricSpace::check_axioms_sampled(std::size_t triples,
                                                                       std::uint64_t seed) const {
  AxiomReport rep;
  const std::size_t n = size();
  if (n == 0) return rep;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t t = 0; t < triples; ++t) {
    const std::size_t i = pick(rng), j = pick(rng), k = pick(rng);
    rep.max_diagonal = std::max(rep.max_diagonal, std::abs((*this)(i, i)));
    rep.max_asymmetry = std::max(rep.max_asymmetry, std::abs((*this)(i, j) - (*this)(j, i)));
    rep.max_triangle_violation = std::max(
        rep.max_triangle_violation, (*this)(i, k) - (*this)(i, j) - (*this)(j, k));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Group actions and distances

QuotientSpec::QuotientSpec(double r, int m1, int m2, int order, bool circle)
    : r_(r), m1_(m1), m2_(m2), order_(order), circle_(circle) {
  require(r > 0.0 && std::isfinite(r), "circle radius r must be positive");
  require(m1 >= 0 && m2 >= 1, "slope needs m1 >= 0 and m2 >= 1");
  require(order >= 1, "group order must be at least 1");
  require(!circle || order >= 8, "circle discretisation needs T >= 8");
}

QuotientSpec QuotientSpec::cyclic(double r, int m1, int m2, int p) {
  return QuotientSpec(r, m1, m2, p, false);
}

QuotientSpec QuotientSpec::circle(double r, int m1, int m2, int steps) {
  return QuotientSpec(r, m1, m2, steps, true);
}

double QuotientSpec::tau(int q) const { return kTwoPi * q / order_; }

double circle_distance(double r, double a, double b) {
  const double d = wrap_angle(b - a);
  return r * std::min(d, kTwoPi - d);
}

double product_distance(double d_p, double d_circle) {
  return std::sqrt(d_p * d_p + d_circle * d_circle);
}

RotationOracle circle_oracle(double radius) {
  require(radius > 0.0, "circle radius must be positive");
  return [radius](const SurfacePoint& a, const SurfacePoint& b, double angle) {
    return circle_distance(radius, a.theta, b.theta + angle);
  };
}

SurfaceOracle::SurfaceOracle(std::shared_ptr<const SurfaceGraph> graph,
                             std::vector<int> source_rows)
    : graph_(std::move(graph)),
      source_of_row_(static_cast<std::size_t>(graph_->n_rho()), -1),
      table_(0, 0) {
  if (source_rows.empty()) {
    source_rows.resize(static_cast<std::size_t>(graph_->n_rho()));
    std::iota(source_rows.begin(), source_rows.end(), 0);
  }
  std::vector<std::size_t> sources;
  for (int row : source_rows) {
    require(row >= 0 && row < graph_->n_rho(), "source row outside the grid");
    if (source_of_row_[static_cast<std::size_t>(row)] >= 0) continue;
    source_of_row_[static_cast<std::size_t>(row)] = static_cast<int>(sources.size());
    sources.push_back(graph_->node_index(row, 0));
  }
  table_ = surface_distances(*graph_, sources);
}

bool SurfaceOracle::has_source(int row) const {
  return row >= 0 && row < graph_->n_rho() && source_of_row_[static_cast<std::size_t>(row)] >= 0;
}

int SurfaceOracle::column_of(double angle) const {
  const double t = wrap_angle(angle) / graph_->theta_step();
  const double c = std::round(t);
  if (std::abs(t - c) > 1e-6) {
    throw DomainError(Kind::kInvalidArgument, "rotation is not aligned with the theta grid");
  }
  return wrap_col(static_cast<long>(c), graph_->n_theta());
}

double SurfaceOracle::operator()(const SurfacePoint& a, const SurfacePoint& b,
                                 double angle) const {
  if (!has_source(a.row) || b.row < 0 || b.row >= graph_->n_rho()) {
    throw DomainError(Kind::kInvalidArgument, "surface point row has no distance source");
  }
  return lookup(a.row, b.row, column_of(b.theta + angle - a.theta));
}

RotationOracle SurfaceOracle::as_oracle() const {
  return [this](const SurfacePoint& a, const SurfacePoint& b, double angle) {
    return (*this)(a, b, angle);
  };
}

double quotient_distance(const QuotientSpec& spec, const ProductPoint& a, const ProductPoint& b,
                         const RotationOracle& d_p) {
  double best = std::numeric_limits<double>::infinity();
  for (int q = 0; q < spec.order(); ++q) {
    const double tau = spec.tau(q);
    const double dp = d_p(a.x, b.x, spec.m1() * tau);
    const double ds = circle_distance(spec.r(), a.s, b.s + spec.m2() * tau);
    best = std::min(best, product_distance(dp, ds));
  }
  return best;
}

// ---------------------------------------------------------------------------
// Correspondences

bool Correspondence::covers(std::size_t nx, std::size_t ny) const {
  std::vector<char> hx(nx, 0), hy(ny, 0);
  for (const auto& [i, j] : pairs) {
    if (i >= nx || j >= ny) return false;
    hx[i] = hy[j] = 1;
  }
  return std::all_of(hx.begin(), hx.end(), [](char c) { return c != 0; }) &&
         std::all_of(hy.begin(), hy.end(), [](char c) { return c != 0; });
}

Correspondence Correspondence::inverse() const {
  Correspondence inv;
  inv.pairs.reserve(pairs.size());
  for (const auto& [i, j] : pairs) inv.pairs.emplace_back(j, i);
  return inv;
}

SliceCorrespondence natural_correspondence(std::span<const ProductPoint> sample,
                                           const QuotientSpec& spec) {
  SliceCorrespondence out;
  const double kappa = spec.kappa();
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const SurfacePoint y{sample[i].x.row, wrap_angle(sample[i].x.theta - kappa * sample[i].s)};
    std::size_t j = 0;
    for (; j < out.limit_points.size(); ++j) {
      const SurfacePoint& z = out.limit_points[j];
      if (z.row == y.row && circle_distance(1.0, z.theta, y.theta) < 1e-9) break;
    }
    if (j == out.limit_points.size()) out.limit_points.push_back(y);
    out.correspondence.pairs.emplace_back(i, j);
  }
  return out;
}

double distortion(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
                  const Correspondence& C) {
  if (!C.covers(X.size(), Y.size())) {
    throw DomainError(Kind::kInvalidArgument, "correspondence does not cover both spaces");
  }
  const std::size_t k = C.pairs.size();
  std::vector<double> worst(k, 0.0);
  parallel_for(k, [&](std::size_t a) {
    std::vector<double> xs(k), ys(k);
    const auto [ia, ja] = C.pairs[a];
    const auto xr = X.row(ia);
    const auto yr = Y.row(ja);
    for (std::size_t b = 0; b < k; ++b) {
      xs[b] = xr[C.pairs[b].first];
      ys[b] = yr[C.pairs[b].second];
    }
    worst[a] = kernels::max_abs_diff(xs, ys);
  });
  return k == 0 ? 0.0 : *std::max_element(worst.begin(), worst.end());
}

// ---------------------------------------------------------------------------
// Experiment

namespace {

RotSymMetric truncate_surface(const WarpCurve& warp, double rho_max) {
  require(rho_max > 0.0 && std::isfinite(rho_max), "rho_max must be positive and finite");
  return RotSymMetric::truncated(warp, rho_max);
}

long checked_lcm(long a, long b) {
  const long l = std::lcm(a, b);
  if (l > kMaxThetaResolution) {
    std::ostringstream os;
    os << "aligning rotations with the theta grid needs " << l << " > " << kMaxThetaResolution
       << " columns; choose p values and grid sizes with common factors";
    throw DomainError(Kind::kInvalidArgument, os.str());
  }
  return l;
}

// Columns a rotation by 2 pi * num / den must be a multiple of.
long alignment(long num, long den) {
  if (num == 0) return 1;
  return den / std::gcd(num, den);
}

FiniteMetricSpace limit_distances(const SurfaceOracle& oracle,
                                  const std::vector<SurfacePoint>& points, int row_scale,
                                  int col_scale) {
  const std::size_t n = points.size();
  const int cols = oracle.graph().n_theta();
  std::vector<int> row(n), col(n);
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    row[i] = points[i].row * row_scale;
    col[i] = oracle.column_of(points[i].theta);
    std::ostringstream os;
    os << "y" << points[i].row << ':' << col[i] / col_scale;
    labels[i] = os.str();
  }
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      d[i * n + j] = d[j * n + i] = oracle.lookup(row[i], row[j], wrap_col(col[j] - col[i], cols));
    }
  }
  return FiniteMetricSpace(std::move(labels), std::move(d));
}

}  // namespace

CollapseSetup::CollapseSetup(const CollapseConfig& config, std::span<const int> extra_orders)
    : config_(config),
      p_metric_(truncate_surface(config.surface, config.rho_max)),
      limit_metric_(transform_upsilon(p_metric_,
                                      TransformParams::rational(config.r, config.m1, config.m2))) {
  const GridSize& g = config.grid;
  const GridSize& s = config.sample;
  require(g.n_rho >= 8 && g.n_theta >= 8 && g.n_s >= 1, "grid needs n_rho, n_theta >= 8, n_s >= 1");
  require(s.n_rho >= 2 && s.n_rho <= g.n_rho, "sample n_rho must lie in [2, grid n_rho]");
  require(s.n_theta >= 1 && s.n_theta <= g.n_theta, "sample n_theta must lie in [1, grid n_theta]");
  require(s.n_s >= 1 && s.n_s <= g.n_s, "sample n_s must lie in [1, grid n_s]");
  for (int p : config.p_values) require(p >= 1, "p values must be positive");

  long res = g.n_theta;
  for (int p : config.p_values) res = checked_lcm(res, alignment(config.m1, p));
  for (int t : extra_orders) {
    require(t >= 1, "group orders must be positive");
    res = checked_lcm(res, alignment(config.m1, t));
  }
  // kappa * (2 pi k / n_s) must be a whole number of columns.
  res = checked_lcm(res, alignment(config.m1, static_cast<long>(config.m2) * g.n_s));
  theta_res_ = static_cast<int>(res);
  const int col_scale = theta_res_ / g.n_theta;

  auto p_graph =
      std::make_shared<const SurfaceGraph>(p_metric_, g.n_rho, theta_res_, config.stencil);
  const std::vector<int> rows = evenly_spaced(s.n_rho, g.n_rho - 1, true);
  const std::vector<int> cols = evenly_spaced(s.n_theta, g.n_theta, false);
  const std::vector<int> s_idx = evenly_spaced(s.n_s, g.n_s, false);
  for (int row : rows) {
    for (int c : cols) {
      if (p_graph->is_pole_row(row) && c != 0) continue;
      for (int k : s_idx) {
        sample_.push_back({{row, kTwoPi * (c * col_scale) / theta_res_}, kTwoPi * k / g.n_s});
      }
    }
  }
  p_oracle_ = std::make_unique<SurfaceOracle>(p_graph, rows);
  slice_ = natural_correspondence(sample_, cyclic(1));

  const SurfaceOracle limit(
      std::make_shared<const SurfaceGraph>(limit_metric_, g.n_rho, theta_res_, config.stencil),
      rows);
  limit_space_ = std::make_unique<FiniteMetricSpace>(
      limit_distances(limit, slice_.limit_points, 1, col_scale));
  std::vector<int> refined_rows;
  for (int row : rows) refined_rows.push_back(2 * row);
  const SurfaceOracle refined(std::make_shared<const SurfaceGraph>(
                                  limit_metric_, 2 * g.n_rho - 1, 2 * theta_res_, config.stencil),
                              refined_rows);
  refined_limit_space_ = std::make_unique<FiniteMetricSpace>(
      limit_distances(refined, slice_.limit_points, 2, 2 * col_scale));
}

QuotientSpec CollapseSetup::cyclic(int p) const {
  return QuotientSpec::cyclic(config_.r, config_.m1, config_.m2, p);
}

QuotientSpec CollapseSetup::circle(int steps) const {
  return QuotientSpec::circle(config_.r, config_.m1, config_.m2, steps);
}

FiniteMetricSpace CollapseSetup::quotient_space(const QuotientSpec& spec) const {
  require(spec.r() == config_.r && spec.m1() == config_.m1 && spec.m2() == config_.m2,
          "quotient spec does not match the experiment");
  const int order = spec.order();
  const long shift_num = static_cast<long>(theta_res_) * spec.m1();
  if (shift_num % order != 0) {
    throw DomainError(Kind::kInvalidArgument,
                      "group order is not aligned with the theta grid; pass it as an extra order");
  }
  const long shift = shift_num / order;
  const std::size_t n = sample_.size();
  const SurfaceOracle& oracle = *p_oracle_;

  std::vector<int> col(n);
  for (std::size_t i = 0; i < n; ++i) col[i] = oracle.column_of(sample_[i].x.theta);

  // Circle-factor distances for every pair of distinct s values and group
  // element.
  std::vector<double> s_values;
  std::vector<std::size_t> s_of(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto it = std::find(s_values.begin(), s_values.end(), sample_[i].s);
    s_of[i] = static_cast<std::size_t>(it - s_values.begin());
    if (it == s_values.end()) s_values.push_back(sample_[i].s);
  }
  const std::size_t ns = s_values.size();
  std::vector<double> ds(ns * ns * static_cast<std::size_t>(order));
  for (std::size_t a = 0; a < ns; ++a) {
    for (std::size_t b = 0; b < ns; ++b) {
      double* out = &ds[(a * ns + b) * static_cast<std::size_t>(order)];
      for (int q = 0; q < order; ++q) {
        out[q] = circle_distance(spec.r(), s_values[a], s_values[b] + spec.m2() * spec.tau(q));
      }
    }
  }

  std::vector<double> d(n * n, 0.0);
  parallel_for(n, [&](std::size_t i) {
    std::vector<double> dp(static_cast<std::size_t>(order));
    for (std::size_t j = i + 1; j < n; ++j) {
      const long base = col[j] - col[i];
      for (int q = 0; q < order; ++q) {
        dp[static_cast<std::size_t>(q)] = oracle.lookup(
            sample_[i].x.row, sample_[j].x.row, wrap_col(base + q * shift, theta_res_));
      }
      const std::span<const double> dsq(&ds[(s_of[i] * ns + s_of[j]) * order],
                                        static_cast<std::size_t>(order));
      d[i * n + j] = std::sqrt(kernels::min_sum_squares(dp, dsq));
    }
  });
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) d[j * n + i] = d[i * n + j];
  }

  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::ostringstream os;
    os << "x" << sample_[i].x.row << ':' << col[i] << ':' << sample_[i].s;
    labels[i] = os.str();
  }
  return FiniteMetricSpace(std::move(labels), std::move(d));
}

double CollapseSetup::distortion_for(const QuotientSpec& spec) const {
  return distortion(quotient_space(spec), *limit_space_, slice_.correspondence);
}

double CollapseSetup::grid_floor() const {
  Correspondence id;
  for (std::size_t i = 0; i < limit_space_->size(); ++i) id.pairs.emplace_back(i, i);
  return distortion(*limit_space_, *refined_limit_space_, id);
}

std::vector<CollapseRow> collapse_experiment(const CollapseConfig& config) {
  require(!config.p_values.empty(), "p_values must not be empty");
  const CollapseSetup setup(config);
  const double floor = setup.grid_floor();
  std::vector<CollapseRow> rows;
  for (int p : config.p_values) {
    const FiniteMetricSpace X = setup.quotient_space(setup.cyclic(p));
    const auto axioms = X.check_axioms_sampled(100000, config.seed + static_cast<std::uint64_t>(p));
    if (axioms.max_triangle_violation > kTriangleTolerance) {
      std::ostringstream os;
      os << "p=" << p << ": triangle inequality violated by " << axioms.max_triangle_violation;
      warn(os.str());
    }
    const double dist = distortion(X, setup.limit_space(), setup.slice().correspondence);
    rows.push_back({p, dist, 0.5 * dist, floor});
  }
  return rows;
}

}  // namespace collapse_lab
