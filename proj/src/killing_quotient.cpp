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

#include "collapse_lab/killing_quotient.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "collapse_lab/error.hpp"

namespace collapse_lab {
namespace {

using Kind = DomainError::Kind;

// Cholesky solve of a Gram system. Fails rather than regularises: a singular
// Gram matrix means the caller's vectors are not independent.
Eigen::LLT<Eigen::MatrixXd> factor_gram(const Eigen::MatrixXd& gram, Kind kind,
                                        const char* what) {
  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success) {
    throw DomainError(kind, std::string(what) + ": Gram matrix is not positive definite");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram, Eigen::EigenvaluesOnly);
  const double lmin = eig.eigenvalues().minCoeff();
  const double lmax = eig.eigenvalues().maxCoeff();
  if (!(lmin > lmax / kGramSingularCondition)) {
    throw DomainError(kind, std::string(what) + ": Gram matrix is numerically singular");
  }
  if (lmin * kGramWarnCondition < lmax) {
    std::ostringstream os;
    os << what << ": Gram condition number " << lmax / lmin << " exceeds "
       << kGramWarnCondition;
    warn(os.str());
  }
  return llt;
}

void require_dim(const PointMetric& g, const Eigen::VectorXd& v, const char* what) {
  if (v.size() != g.dim()) {
    throw DomainError(Kind::kInvalidArgument,
                      std::string(what) + " has the wrong dimension for the metric");
  }
}

}  // namespace

PointMetric::PointMetric(Eigen::MatrixXd matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols()) {
    throw DomainError(Kind::kInvalidMetric, "metric must be a nonempty square matrix");
  }
  if (!matrix_.allFinite()) throw DomainError(Kind::kInvalidMetric, "metric has non-finite entries");
  const double scale = std::max(1.0, matrix_.cwiseAbs().maxCoeff());
  if ((matrix_ - matrix_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw DomainError(Kind::kInvalidMetric, "metric is not symmetric");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(matrix_);
  if (llt.info() != Eigen::Success) {
    throw DomainError(Kind::kInvalidMetric, "metric is not positive definite");
  }
}

PointMetric PointMetric::identity(int dim) {
  return PointMetric(Eigen::MatrixXd::Identity(dim, dim));
}

PointMetric PointMetric::diagonal(const Eigen::VectorXd& entries) {
  return PointMetric(Eigen::MatrixXd(entries.asDiagonal()));
}

double PointMetric::inner(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  return x.dot(matrix_ * y);
}

Eigen::MatrixXd HBasis::as_matrix(int dim) const {
  Eigen::MatrixXd m(dim, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != dim) {
      throw DomainError(Kind::kInvalidArgument, "H vector has the wrong dimension");
    }
    m.col(static_cast<Eigen::Index>(i)) = vectors[i];
  }
  return m;
}

PointMetric transform_killing(const PointMetric& g, const KillingVector& K, double r,
                              double kappa) {
  require_dim(g, K.components, "Killing vector");
  if (!(r > 0.0)) throw DomainError(Kind::kInvalidArgument, "circle radius r must be positive");
  if (!(kappa >= 0.0)) throw DomainError(Kind::kInvalidArgument, "slope kappa must be nonnegative");

  const Eigen::VectorXd k_flat = g.lower(K.components);
  const double k2 = K.components.dot(k_flat);
  if (k2 == 0.0 || kappa == 0.0) return g;

  // Split g into the part along K* and its complement and rescale the former
  // by r^2 / (kappa^2 |K|^2 + r^2). Algebraically this is
  // g - kappa^2 / (kappa^2 |K|^2 + r^2) K* (x) K*.
  const Eigen::MatrixXd along = k_flat * k_flat.transpose() / k2;
  const double scale = r * r / (kappa * kappa * k2 + r * r);
  Eigen::MatrixXd h = (g.matrix() - along) + scale * along;
  h = 0.5 * (h + h.transpose()).eval();
  return PointMetric(std::move(h));
}

Eigen::VectorXd project_onto_complement(const PointMetric& g, const HBasis& H,
                                        const Eigen::VectorXd& X) {
  require_dim(g, X, "vector X");
  if (H.vectors.empty()) return X;
  const Eigen::MatrixXd hm = H.as_matrix(g.dim());
  const Eigen::MatrixXd g_h = g.matrix() * hm;
  const Eigen::MatrixXd gram = hm.transpose() * g_h;
  const Eigen::VectorXd coeff =
      factor_gram(gram, Kind::kDegenerateBasis, "orbit basis H").solve(g_h.transpose() * X);
  return X - hm * coeff;
}

PointMetric quotient_metric_form(const PointMetric& g, const HBasis& H,
                                 const std::vector<Eigen::VectorXd>& frame) {
  const int n = g.dim();
  const auto m = static_cast<int>(H.vectors.size());
  if (static_cast<int>(frame.size()) != n - m || frame.empty()) {
    throw DomainError(Kind::kTransversality,
                      "frame must contain dim - |H| vectors to complement H");
  }
  Eigen::MatrixXd all(n, n);
  for (int i = 0; i < m; ++i) all.col(i) = H.vectors[static_cast<std::size_t>(i)];
  for (int i = 0; i < n - m; ++i) {
    require_dim(g, frame[static_cast<std::size_t>(i)], "frame vector");
    all.col(m + i) = frame[static_cast<std::size_t>(i)];
  }
  // H + frame must span the tangent space.
  factor_gram(all.transpose() * g.matrix() * all, Kind::kTransversality, "frame and H");

  std::vector<Eigen::VectorXd> perp;
  perp.reserve(frame.size());
  for (const auto& x : frame) perp.push_back(project_onto_complement(g, H, x));
  Eigen::MatrixXd h(n - m, n - m);
  for (int i = 0; i < n - m; ++i) {
    for (int j = i; j < n - m; ++j) {
      h(i, j) = h(j, i) = g.inner(perp[static_cast<std::size_t>(i)],
                                  perp[static_cast<std::size_t>(j)]);
    }
  }
  return PointMetric(std::move(h));
}

CirclePushforward product_circle_pushforward(double f, double r) {
  if (!(f > 0.0) || !(r > 0.0)) {
    throw DomainError(Kind::kInvalidArgument, "pushforward needs f > 0 and r > 0");
  }
  const Eigen::Vector3d metric_diag(1.0, f * f, r * r);
  auto g = [&](const Eigen::Vector3d& x, const Eigen::Vector3d& y) {
    return x.cwiseProduct(metric_diag).dot(y);
  };
  // V - g(V, W) W with W = U / |U|, U = d_theta + d_s; |U|^2 = f^2 + r^2.
  const Eigen::Vector3d U(0.0, 1.0, 1.0);
  const double u2 = g(U, U);
  auto push = [&](const Eigen::Vector3d& v) -> Eigen::Vector3d { return v - (g(v, U) / u2) * U; };

  CirclePushforward out;
  out.d_rho = push(Eigen::Vector3d::UnitX());
  out.d_theta = push(Eigen::Vector3d::UnitY());
  out.d_s = push(Eigen::Vector3d::UnitZ());
  out.h(0, 0) = g(out.d_rho, out.d_rho);
  out.h(0, 1) = out.h(1, 0) = g(out.d_rho, out.d_theta);
  out.h(1, 1) = g(out.d_theta, out.d_theta);
  return out;
}

}  // namespace collapse_lab
