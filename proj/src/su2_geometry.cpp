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

#include "collapse_lab/su2_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "collapse_lab/error.hpp"
#include "collapse_lab/killing_quotient.hpp"

namespace collapse_lab {
namespace {

using Kind = DomainError::Kind;

Quaternion extended_field(const Vec4& x, int n) {
  const Quaternion p(x);
  return (1.0 / p.norm()) * (p * Quaternion::unit(n));
}

Vec4 axpy(double s, const Vec4& x, const Vec4& y) {
  return {y[0] + s * x[0], y[1] + s * x[1], y[2] + s * x[2], y[3] + s * x[3]};
}

double norm3(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

double max_stretch_distortion(const std::vector<double>& stretch, double radius) {
  double worst = 0.0;
  for (double s : stretch) worst = std::max(worst, std::abs(radius * s - 1.0));
  return worst;
}

}  // namespace

double Quaternion::norm() const { return std::sqrt(dot(c_, c_)); }

Quaternion operator*(const Quaternion& p, const Quaternion& q) {
  const double a1 = p[0], b1 = p[1], c1 = p[2], d1 = p[3];
  const double a2 = q[0], b2 = q[1], c2 = q[2], d2 = q[3];
  return {a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2, a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
          a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2, a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2};
}

Quaternion operator+(const Quaternion& p, const Quaternion& q) {
  return {p[0] + q[0], p[1] + q[1], p[2] + q[2], p[3] + q[3]};
}

Quaternion operator-(const Quaternion& p, const Quaternion& q) {
  return {p[0] - q[0], p[1] - q[1], p[2] - q[2], p[3] - q[3]};
}

Quaternion operator*(double s, const Quaternion& q) {
  return {s * q[0], s * q[1], s * q[2], s * q[3]};
}

double dot(const Vec4& a, const Vec4& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

UnitQuaternion::UnitQuaternion(const Quaternion& q) : q_(q) {
  const double n2 = dot(q.components(), q.components());
  if (!(std::abs(n2 - 1.0) <= 1e-12)) {
    throw DomainError(Kind::kInvalidArgument, "quaternion is not of unit length");
  }
}

UnitQuaternion UnitQuaternion::normalized(const Quaternion& q) {
  const double n = q.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw DomainError(Kind::kInvalidArgument, "cannot normalise a zero quaternion");
  }
  return UnitQuaternion((1.0 / n) * q);
}

UnitQuaternion UnitQuaternion::from_complex(std::complex<double> z, std::complex<double> w) {
  return UnitQuaternion(Quaternion(z.real(), z.imag(), w.real(), w.imag()));
}

void BergerMetric::validate() const {
  if (!(A > 0.0 && B > 0.0 && C > 0.0) || !std::isfinite(A + B + C)) {
    throw DomainError(Kind::kInvalidMetric, "Berger coefficients must be positive");
  }
}

std::array<Vec4, 3> frame_at(const UnitQuaternion& q) {
  return {(q.value() * Quaternion::unit(1)).components(),
          (q.value() * Quaternion::unit(2)).components(),
          (q.value() * Quaternion::unit(3)).components()};
}

double bracket_check(const UnitQuaternion& q, int i, int j, double step) {
  if (i < 1 || i > 3 || j < 1 || j > 3) {
    throw DomainError(Kind::kInvalidArgument, "frame indices run from 1 to 3");
  }
  if (!(step > 0.0)) throw DomainError(Kind::kInvalidArgument, "step must be positive");
  const Vec4& x = q.components();
  const Vec4 xi = extended_field(x, i).components();
  const Vec4 xj = extended_field(x, j).components();

  // [X, Y] = DY(X) - DX(Y)
  const Quaternion dy_x = (1.0 / (2.0 * step)) * (extended_field(axpy(step, xi, x), j) -
                                                  extended_field(axpy(-step, xi, x), j));
  const Quaternion dx_y = (1.0 / (2.0 * step)) * (extended_field(axpy(step, xj, x), i) -
                                                  extended_field(axpy(-step, xj, x), i));
  const Quaternion bracket = dy_x - dx_y;

  Quaternion expected;
  if (i != j) {
    const int k = 6 - i - j;
    const bool cyclic = (j - i + 3) % 3 == 1;
    expected = (cyclic ? 2.0 : -2.0) * (q.value() * Quaternion::unit(k));
  }
  double worst = 0.0;
  for (std::size_t c = 0; c < 4; ++c) worst = std::max(worst, std::abs(bracket[c] - expected[c]));
  return worst;
}

double berger_norm(const BergerMetric& metric, const UnitQuaternion& q, const Vec4& v) {
  metric.validate();
  if (std::abs(dot(v, q.components())) > 1e-8) {
    throw DomainError(Kind::kTangency, "vector is not tangent to S^3 at q");
  }
  const auto f = frame_at(q);
  const double c1 = dot(v, f[0]);
  const double c2 = dot(v, f[1]);
  const double c3 = dot(v, f[2]);
  return std::sqrt(metric.A * c1 * c1 + metric.B * c2 * c2 + metric.C * c3 * c3);
}

Vec3 hopf_map(const UnitQuaternion& q) {
  const std::complex<double> z = q.z();
  const std::complex<double> w = q.w();
  const std::complex<double> zw = z * w;
  return {2.0 * zw.real(), 2.0 * zw.imag(), std::norm(z) - std::norm(w)};
}

Vec3 hopf_pushforward(const UnitQuaternion& q, const Vec4& v, double step) {
  if (!(step > 0.0)) throw DomainError(Kind::kInvalidArgument, "step must be positive");
  if (dot(v, v) == 0.0) return {0.0, 0.0, 0.0};
  const Vec4& x = q.components();
  const Vec3 hp = hopf_map(UnitQuaternion::normalized(Quaternion(axpy(step, v, x))));
  const Vec3 hm = hopf_map(UnitQuaternion::normalized(Quaternion(axpy(-step, v, x))));
  const double inv = 1.0 / (2.0 * step);
  return {(hp[0] - hm[0]) * inv, (hp[1] - hm[1]) * inv, (hp[2] - hm[2]) * inv};
}

std::vector<double> horizontal_stretch_samples(const BergerMetric& metric, int count,
                                               std::uint64_t seed) {
  metric.validate();
  if (count <= 0) throw DomainError(Kind::kInvalidArgument, "sample count must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  while (static_cast<int>(out.size()) < count) {
    const Quaternion raw(normal(rng), normal(rng), normal(rng), normal(rng));
    const double n1 = normal(rng), n2 = normal(rng), n3 = normal(rng);
    if (raw.norm() < 1e-6) continue;
    const UnitQuaternion q = UnitQuaternion::normalized(raw);
    const auto f = frame_at(q);

    // Gram-Schmidt against F_1 in the Berger metric, in frame coordinates.
    const double c1 = n1 - (metric.A * n1) / metric.A;
    const double len = std::sqrt(metric.A * c1 * c1 + metric.B * n2 * n2 + metric.C * n3 * n3);
    if (len < 1e-6) continue;
    Vec4 v{};
    for (std::size_t c = 0; c < 4; ++c) v[c] = (c1 * f[0][c] + n2 * f[1][c] + n3 * f[2][c]) / len;
    out.push_back(norm3(hopf_pushforward(q, v)));
  }
  return out;
}

double submersion_distortion(const BergerMetric& metric, double target_radius, int count,
                             std::uint64_t seed) {
  return max_stretch_distortion(horizontal_stretch_samples(metric, count, seed), target_radius);
}

RadiusFit best_submersion_radius(const BergerMetric& metric, int count, std::uint64_t seed,
                                 double lo, double hi, int scan_points) {
  if (!(lo > 0.0 && hi > lo) || scan_points < 3) {
    throw DomainError(Kind::kInvalidArgument, "radius scan needs 0 < lo < hi and >= 3 points");
  }
  const std::vector<double> stretch = horizontal_stretch_samples(metric, count, seed);
  const double dr = (hi - lo) / (scan_points - 1);
  int best = 0;
  double best_val = max_stretch_distortion(stretch, lo);
  for (int k = 1; k < scan_points; ++k) {
    const double v = max_stretch_distortion(stretch, lo + k * dr);
    if (v < best_val) {
      best_val = v;
      best = k;
    }
  }
  double a = lo + std::max(0, best - 1) * dr;
  double b = lo + std::min(scan_points - 1, best + 1) * dr;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = max_stretch_distortion(stretch, x1);
  double f2 = max_stretch_distortion(stretch, x2);
  for (int it = 0; it < 200 && b - a > 1e-14 * b; ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = max_stretch_distortion(stretch, x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = max_stretch_distortion(stretch, x2);
    }
  }
  RadiusFit fit{f1 <= f2 ? x1 : x2, std::min(f1, f2)};
  if (best_val < fit.distortion) fit = {lo + best * dr, best_val};
  return fit;
}

std::vector<std::pair<double, double>> distortion_scan(const BergerMetric& metric, int count,
                                                       std::uint64_t seed, double lo,
                                                       double hi, int points) {
  if (!(lo > 0.0 && hi > lo) || points < 2) {
    throw DomainError(Kind::kInvalidArgument, "radius scan needs 0 < lo < hi and >= 2 points");
  }
  const std::vector<double> stretch = horizontal_stretch_samples(metric, count, seed);
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) {
    const double radius = lo + (hi - lo) * k / (points - 1);
    out.emplace_back(radius, max_stretch_distortion(stretch, radius));
  }
  return out;
}

BergerMetric xi_quotient_metric(double xi) {
  const double s = std::sin(xi);
  if (!std::isfinite(xi) || std::abs(s) < 1e-12) {
    throw DomainError(Kind::kCollapsedQuotient,
                      "xi = 0 or pi: the quotient collapses to a 2-dimensional space");
  }
  const double kappa = std::abs(std::cos(xi) / s);
  const PointMetric h =
      transform_killing(PointMetric::identity(3), KillingVector{Eigen::Vector3d::UnitX()}, 1.0,
                        kappa);
  return {h(0, 0), h(1, 1), h(2, 2)};
}

}  // namespace collapse_lab
