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

// Pointwise linear algebra for metrics on quotients by isometric actions.
//
// Everything here works on a single tangent space with a fixed frame: a
// metric is a symmetric positive-definite matrix, a Killing field is just its
// value at the point, and the orbit directions H are a list of vectors.

#pragma once

#include <vector>

#include <Eigen/Dense>

namespace collapse_lab {

// Gram systems whose condition number exceeds this produce a warning.
inline constexpr double kGramWarnCondition = 1e12;
// ... and beyond this they are treated as singular.
inline constexpr double kGramSingularCondition = 1e14;

class PointMetric {
 public:
  // Throws DomainError(kInvalidMetric) unless symmetric to 1e-12 (relative to
  // the largest entry) and positive definite.
  explicit PointMetric(Eigen::MatrixXd matrix);
  static PointMetric identity(int dim);
  static PointMetric diagonal(const Eigen::VectorXd& entries);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const Eigen::MatrixXd& matrix() const { return matrix_; }
  double operator()(int i, int j) const { return matrix_(i, j); }

  double inner(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
  double norm_squared(const Eigen::VectorXd& x) const { return inner(x, x); }
  Eigen::VectorXd lower(const Eigen::VectorXd& x) const { return matrix_ * x; }

 private:
  Eigen::MatrixXd matrix_;
};

// Value of a Killing field at the point, in the metric's frame.
struct KillingVector {
  Eigen::VectorXd components;
};

// Vectors spanning the orbit directions H.
struct HBasis {
  std::vector<Eigen::VectorXd> vectors;

  // Columns are the basis vectors.
  Eigen::MatrixXd as_matrix(int dim) const;
};

// g - kappa^2 / (kappa^2 |K|^2 + r^2) K* (x) K*, the metric induced on the
// quotient of M x S^1(r) by the circle acting as the flow of K on M and with
// slope kappa on the circle factor.
PointMetric transform_killing(const PointMetric& g, const KillingVector& K, double r,
                              double kappa);

// X - P_H X with P_H the g-orthogonal projection onto span(H).
Eigen::VectorXd project_onto_complement(const PointMetric& g, const HBasis& H,
                                        const Eigen::VectorXd& X);

// h(X_i, X_j) = g(X_i^perp, X_j^perp) on a frame transverse to H.
PointMetric quotient_metric_form(const PointMetric& g, const HBasis& H,
                                 const std::vector<Eigen::VectorXd>& frame);

// Submersion P x S^1(r) -> (P x S^1(r))/S^1 for the diagonal action
// (theta, s) -> (theta + t, s + t), worked directly from the unit orbit
// direction W = (d_theta + d_s)/sqrt(f^2 + r^2) in the frame
// (d_rho, d_theta, d_s) with g = diag(1, f^2, r^2).
struct CirclePushforward {
  Eigen::Vector3d d_rho;
  Eigen::Vector3d d_theta;
  Eigen::Vector3d d_s;
  Eigen::Matrix2d h;  // induced metric on (d_rho, d_theta)
};

CirclePushforward product_circle_pushforward(double f, double r);

}  // namespace collapse_lab
