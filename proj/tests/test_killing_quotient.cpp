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
#include <random>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "collapse_lab/error.hpp"
#include "collapse_lab/killing_quotient.hpp"
#include "collapse_lab/warped_metric.hpp"

namespace collapse_lab {
namespace {

Eigen::MatrixXd random_spd(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = g(rng);
  Eigen::MatrixXd s = a * a.transpose() + 0.5 * Eigen::MatrixXd::Identity(n, n);
  return 0.5 * (s + s.transpose());
}

Eigen::VectorXd random_vector(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = g(rng);
  return v;
}

Eigen::Vector3d v3(double a, double b, double c) { return {a, b, c}; }

TEST(PointMetric, Validation) {
  Eigen::MatrixXd bad(2, 2);
  bad << 1, 0.5, 0.4, 1;
  EXPECT_THROW(PointMetric{bad}, DomainError);
  bad << 1, 2, 2, 1;
  EXPECT_THROW(PointMetric{bad}, DomainError);
  EXPECT_NO_THROW(PointMetric::identity(4));
}

TEST(TransformKilling, BergerExampleIsExact) {
  for (double kappa : {0.5, 1.0, 2.0, 0.3}) {
    const PointMetric h = transform_killing(PointMetric::identity(3), {v3(1, 0, 0)}, 1.0, kappa);
    Eigen::Matrix3d expected = Eigen::Matrix3d::Identity();
    expected(0, 0) = 1.0 / (kappa * kappa + 1.0);
    EXPECT_EQ(h.matrix(), Eigen::MatrixXd(expected)) << "kappa=" << kappa;
  }
}

TEST(TransformKilling, ZeroFieldLeavesMetric) {
  std::mt19937_64 rng(1);
  const PointMetric g(random_spd(4, rng));
  EXPECT_EQ(transform_killing(g, {Eigen::VectorXd::Zero(4)}, 2.0, 3.0).matrix(), g.matrix());
}

TEST(TransformKilling, FormulaOracle) {
  // h = g - kappa^2 / (kappa^2 |K|^2 + r^2) (gK)(gK)^T, written out directly.
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> ur(0.1, 10.0), uk(0.0, 10.0);
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + t % 5;
    const Eigen::MatrixXd g = random_spd(n, rng);
    const Eigen::VectorXd K = random_vector(n, rng);
    const double r = ur(rng), kappa = uk(rng);
    const Eigen::VectorXd gk = g * K;
    const double k2 = K.dot(gk);
    const Eigen::MatrixXd oracle = g - kappa * kappa / (kappa * kappa * k2 + r * r) * gk * gk.transpose();
    const Eigen::MatrixXd h = transform_killing(PointMetric(g), {K}, r, kappa).matrix();
    EXPECT_LE((h - oracle).cwiseAbs().maxCoeff(), 1e-10 * g.cwiseAbs().maxCoeff());
  }
}

TEST(TransformKilling, PositiveDefinitenessProperty) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ur(0.1, 10.0), uk(0.0, 10.0);
  for (int t = 0; t < 1000; ++t) {
    const int n = 2 + t % 5;
    const PointMetric g(random_spd(n, rng));
    const Eigen::VectorXd K = random_vector(n, rng);
    const double r = ur(rng), kappa = uk(rng);
    const PointMetric h = transform_killing(g, {K}, r, kappa);
    const double lam_g = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(g.matrix()).eigenvalues()(0);
    const double lam_h = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(h.matrix()).eigenvalues()(0);
    const double k2 = g.norm_squared(K);
    EXPECT_GE(lam_h, r * r / (kappa * kappa * k2 + r * r) * lam_g - 1e-10);
  }
}

TEST(TransformKilling, SurfaceDataMatchesWarpTransform) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> urho(0.05, 2.5), ur(0.2, 4.0), uk(0.0, 4.0);
  for (int t = 0; t < 100; ++t) {
    const double rho = urho(rng), r = ur(rng), kappa = uk(rng);
    const double f = std::sinh(rho);
    Eigen::Vector2d diag(1.0, f * f);
    const PointMetric h =
        transform_killing(PointMetric::diagonal(diag), {Eigen::Vector2d(0, 1)}, r, kappa);
    const RotSymMetric m =
        transform_upsilon(RotSymMetric::natural(WarpCurve::sinh()), TransformParams(r, kappa));
    const double ft = eval_warp(m, rho).f;
    EXPECT_NEAR(h(1, 1), ft * ft, 1e-12 * std::max(1.0, ft * ft));
    EXPECT_EQ(h(0, 0), 1.0);
    EXPECT_EQ(h(0, 1), 0.0);
  }
}

TEST(ProjectOntoComplement, Examples) {
  const PointMetric id = PointMetric::identity(3);
  const HBasis e1{{v3(1, 0, 0)}};
  EXPECT_LE((project_onto_complement(id, e1, v3(1, 1, 0)) - v3(0, 1, 0)).norm(), 1e-15);
  EXPECT_LE(project_onto_complement(id, e1, v3(2, 0, 0)).norm(), 1e-15);

  const double f = 1.7, r = 0.6;
  const PointMetric g = PointMetric::diagonal(v3(1, f * f, r * r));
  const Eigen::VectorXd p = project_onto_complement(g, HBasis{{v3(0, 1, 1)}}, v3(0, 1, 0));
  const double s = f * f + r * r;
  EXPECT_LE((p - v3(0, r * r / s, -f * f / s)).norm(), 1e-15);
}

TEST(ProjectOntoComplement, Idempotent) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    const int n = 3 + t % 4;
    const PointMetric g(random_spd(n, rng));
    HBasis H{{random_vector(n, rng), random_vector(n, rng)}};
    const Eigen::VectorXd x = random_vector(n, rng);
    const Eigen::VectorXd once = project_onto_complement(g, H, x);
    const Eigen::VectorXd twice = project_onto_complement(g, H, once);
    EXPECT_LE((once - twice).norm(), 1e-12 * (1 + x.norm()));
    for (const auto& v : H.vectors) EXPECT_NEAR(g.inner(once, v), 0.0, 1e-10 * (1 + x.norm()));
  }
}

TEST(ProjectOntoComplement, DegenerateBasisThrows) {
  const PointMetric id = PointMetric::identity(3);
  EXPECT_THROW(project_onto_complement(id, HBasis{{v3(1, 0, 0), v3(2, 0, 0)}}, v3(0, 1, 0)),
               DomainError);
}

TEST(QuotientMetricForm, ProductCircle) {
  for (double f : {0.3, 1.0, 2.4}) {
    for (double r : {0.5, 1.0, 3.0}) {
      const PointMetric g = PointMetric::diagonal(v3(1, f * f, r * r));
      const PointMetric h = quotient_metric_form(g, HBasis{{v3(0, 1, 1)}}, {v3(1, 0, 0), v3(0, 1, 0)});
      EXPECT_NEAR(h(0, 0), 1.0, 1e-14);
      EXPECT_NEAR(h(0, 1), 0.0, 1e-14);
      EXPECT_NEAR(h(1, 1), r * r * f * f / (f * f + r * r), 1e-14);
    }
  }
}

TEST(QuotientMetricForm, TorusAndSlopedAction) {
  const double r1 = 1.3, r2 = 0.7;
  for (auto [m1, m2] : {std::pair{1, 1}, std::pair{2, 1}, std::pair{3, 2}}) {
    const double kappa = static_cast<double>(m1) / m2;
    const PointMetric g = PointMetric::diagonal(Eigen::Vector2d(r1 * r1, r2 * r2));
    const PointMetric h =
        quotient_metric_form(g, HBasis{{Eigen::Vector2d(m1, m2)}}, {Eigen::Vector2d(1, 0)});
    EXPECT_NEAR(h(0, 0), r1 * r1 * r2 * r2 / (kappa * kappa * r1 * r1 + r2 * r2), 1e-14);
    const double rq = quotient_circle_radius(r1, r2, kappa);
    EXPECT_NEAR(h(0, 0), rq * rq, 1e-14);

    // Sloped action on diag(1, f^2, r^2): H = (0, kappa, 1) gives h_kappa.
    const double f = 0.9, r = 1.4;
    const PointMetric gp = PointMetric::diagonal(v3(1, f * f, r * r));
    const PointMetric hp = quotient_metric_form(gp, HBasis{{v3(0, kappa, 1)}}, {v3(1, 0, 0), v3(0, 1, 0)});
    EXPECT_NEAR(hp(1, 1), r * r * f * f / (kappa * kappa * f * f + r * r), 1e-14);
  }
}

TEST(QuotientMetricForm, OrthogonalFrameGivesGram) {
  const PointMetric g = PointMetric::diagonal(Eigen::Vector4d(1, 2, 3, 4));
  const PointMetric h = quotient_metric_form(g, HBasis{{Eigen::Vector4d(0, 0, 0, 1)}},
                                             {Eigen::Vector4d(1, 0, 0, 0), Eigen::Vector4d(0, 1, 1, 0),
                                              Eigen::Vector4d(0, 0, 1, 0)});
  EXPECT_NEAR(h(0, 0), 1.0, 1e-15);
  EXPECT_NEAR(h(1, 1), 5.0, 1e-15);
  EXPECT_NEAR(h(1, 2), 3.0, 1e-15);
}

TEST(QuotientMetricForm, BasisInvariance) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 50; ++t) {
    const int n = 5;
    const PointMetric g(random_spd(n, rng));
    const Eigen::VectorXd a = random_vector(n, rng), b = random_vector(n, rng);
    std::vector<Eigen::VectorXd> frame;
    for (int k = 0; k < n - 2; ++k) frame.push_back(random_vector(n, rng));
    const PointMetric h1 = quotient_metric_form(g, HBasis{{a, b}}, frame);
    Eigen::Matrix2d M = Eigen::Matrix2d::Random() + 2 * Eigen::Matrix2d::Identity();
    const PointMetric h2 =
        quotient_metric_form(g, HBasis{{M(0, 0) * a + M(1, 0) * b, M(0, 1) * a + M(1, 1) * b}}, frame);
    EXPECT_LE((h1.matrix() - h2.matrix()).cwiseAbs().maxCoeff(), 1e-10 * h1.matrix().norm());
  }
}

TEST(QuotientMetricForm, TransversalityFailures) {
  const PointMetric g = PointMetric::identity(3);
  // Frame vector inside span H.
  EXPECT_THROW(quotient_metric_form(g, HBasis{{v3(1, 0, 0)}}, {v3(1, 0, 0), v3(0, 1, 0)}),
               DomainError);
  // Wrong frame size.
  EXPECT_THROW(quotient_metric_form(g, HBasis{{v3(1, 0, 0)}}, {v3(0, 1, 0)}), DomainError);
}

TEST(CirclePushforward, ProofFormulas) {
  const CirclePushforward unit = product_circle_pushforward(1.0, 1.0);
  EXPECT_LE((unit.d_theta - v3(0, 0.5, -0.5)).norm(), 1e-15);
  EXPECT_LE((unit.d_s - v3(0, -0.5, 0.5)).norm(), 1e-15);
  EXPECT_LE((unit.d_rho - v3(1, 0, 0)).norm(), 1e-15);
  EXPECT_NEAR(unit.h(1, 1), 0.5, 1e-15);

  const CirclePushforward pole = product_circle_pushforward(1e-4, 1.0);
  EXPECT_NEAR(pole.h(1, 1) / 1e-8, 1.0, 1e-7);
  const CirclePushforward wide = product_circle_pushforward(1.0, 1e4);
  EXPECT_NEAR(wide.h(1, 1), 1.0, 1e-7);
}

TEST(CirclePushforward, AgreesWithGenericProjection) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.1, 5.0);
  for (int t = 0; t < 100; ++t) {
    const double f = u(rng), r = u(rng);
    const CirclePushforward pf = product_circle_pushforward(f, r);
    const PointMetric g = PointMetric::diagonal(v3(1, f * f, r * r));
    const HBasis H{{v3(0, 1, 1)}};
    EXPECT_LE((pf.d_theta - project_onto_complement(g, H, v3(0, 1, 0))).norm(), 1e-12);
    EXPECT_LE((pf.d_s - project_onto_complement(g, H, v3(0, 0, 1))).norm(), 1e-12);
    EXPECT_NEAR(pf.h(1, 1), r * r * f * f / (f * f + r * r), 1e-12);
  }
}

}  // namespace
}  // namespace collapse_lab
