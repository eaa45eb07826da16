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

// S^3 = SU(2) as unit quaternions, its left-invariant frame, Berger metrics
// and the Hopf fibration.
//
// A point q = x1 + x2 i + x3 j + x4 k is identified with (z, w) in C^2 via
// z = x1 + i x2, w = x3 + i x4. The left-invariant fields are F_n(q) = q e_n
// for (e_1, e_2, e_3) = (i, j, k); they are orthonormal for the round metric
// and satisfy [F_1, F_2] = 2 F_3 and cyclic permutations.

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

namespace collapse_lab {

using Vec4 = std::array<double, 4>;
using Vec3 = std::array<double, 3>;

class Quaternion {
 public:
  constexpr Quaternion() = default;
  constexpr Quaternion(double x1, double x2, double x3, double x4) : c_{x1, x2, x3, x4} {}
  constexpr explicit Quaternion(const Vec4& c) : c_(c) {}

  static constexpr Quaternion unit(int n) {
    Quaternion q;
    q.c_[static_cast<std::size_t>(n)] = 1.0;
    return q;
  }

  constexpr double operator[](std::size_t i) const { return c_[i]; }
  constexpr const Vec4& components() const { return c_; }

  double norm() const;
  Quaternion conjugate() const { return {c_[0], -c_[1], -c_[2], -c_[3]}; }

  friend Quaternion operator*(const Quaternion& p, const Quaternion& q);
  friend Quaternion operator+(const Quaternion& p, const Quaternion& q);
  friend Quaternion operator-(const Quaternion& p, const Quaternion& q);
  friend Quaternion operator*(double s, const Quaternion& q);

 private:
  Vec4 c_{0.0, 0.0, 0.0, 0.0};
};

double dot(const Vec4& a, const Vec4& b);

class UnitQuaternion {
 public:
  // Throws unless |x|^2 = 1 within 1e-12.
  explicit UnitQuaternion(const Quaternion& q);
  static UnitQuaternion identity() { return UnitQuaternion(Quaternion(1, 0, 0, 0)); }
  // Scales any nonzero quaternion onto S^3.
  static UnitQuaternion normalized(const Quaternion& q);
  static UnitQuaternion from_complex(std::complex<double> z, std::complex<double> w);

  const Quaternion& value() const { return q_; }
  const Vec4& components() const { return q_.components(); }
  std::complex<double> z() const { return {q_[0], q_[1]}; }
  std::complex<double> w() const { return {q_[2], q_[3]}; }

 private:
  Quaternion q_;
};

// Left-invariant metric A w1^2 + B w2^2 + C w3^2.
struct BergerMetric {
  double A = 1.0;
  double B = 1.0;
  double C = 1.0;

  void validate() const;
};

std::array<Vec4, 3> frame_at(const UnitQuaternion& q);

// Largest component of the finite-difference bracket [F_i, F_j](q) minus its
// structure-constant value (2 F_k for cyclic (i, j, k), -2 F_k anticyclic,
// 0 for i = j). Indices are 1..3. The fields are extended off the sphere by
// x -> (x / |x|) e_n, which makes the central-difference error O(step^2).
double bracket_check(const UnitQuaternion& q, int i, int j, double step);

// Berger length of a tangent vector at q.
double berger_norm(const BergerMetric& metric, const UnitQuaternion& q, const Vec4& v);

// (2 Re(zw), 2 Im(zw), |z|^2 - |w|^2): constant on the orbits q -> q e^{t i}
// of F_1, i.e. the Hopf map for the fibration by right multiplication.
Vec3 hopf_map(const UnitQuaternion& q);

// Central difference of hopf_map along v, with the curve points renormalised
// onto S^3.
Vec3 hopf_pushforward(const UnitQuaternion& q, const Vec4& v, double step = 1e-5);

// |dH(v)| over `count` random points q and random Berger-unit vectors v that
// are Berger-orthogonal to F_1. Deterministic for a given seed.
std::vector<double> horizontal_stretch_samples(const BergerMetric& metric, int count,
                                               std::uint64_t seed);

// max |R |dH(v)| - 1| over the samples above.
double submersion_distortion(const BergerMetric& metric, double target_radius, int count,
                             std::uint64_t seed);

struct RadiusFit {
  double radius = 0.0;
  double distortion = 0.0;
};

// The target radius minimising submersion_distortion, located by a scan of
// [lo, hi] followed by golden-section refinement (the distortion is convex
// in the radius).
RadiusFit best_submersion_radius(const BergerMetric& metric, int count, std::uint64_t seed,
                                 double lo, double hi, int scan_points = 200);

// (radius, distortion) on a uniform grid of [lo, hi].
std::vector<std::pair<double, double>> distortion_scan(const BergerMetric& metric, int count,
                                                       std::uint64_t seed, double lo,
                                                       double hi, int points);

// Metric on (S^3 x S^1) / S^1 for the circle generated by
// cos(xi) F_1 + sin(xi) F_4: the Killing-field transform of the round metric
// with K = F_1, r = 1, kappa = |cot xi|, i.e. (sin^2 xi, 1, 1).
BergerMetric xi_quotient_metric(double xi);

}  // namespace collapse_lab
