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

// Rotationally symmetric surface metrics g = drho^2 + f(rho)^2 dtheta^2 and
// the circle-quotient transformation
//
//   f  |->  r f / sqrt(kappa^2 f^2 + r^2)
//
// obtained by dividing P x S^1(r) by the diagonal circle action of slope
// kappa. Named warp families keep closed-form curvature through the
// transformation so that curvature can be evaluated at a smooth pole.

#pragma once

#include <cmath>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace collapse_lab {

// Value and first two derivatives of a warp function at one point.
struct WarpJet {
  double f = 0.0;
  double df = 0.0;
  double d2f = 0.0;
};

// Closed interval [lo, hi], or [lo, hi) when hi_open is set. Either bound
// may be infinite.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool hi_open = false;

  bool contains(double x) const;
  bool contains(const Interval& other) const;
  bool bounded() const;
};

// Least upper bound of a warp over an interval and whether it is attained.
struct Supremum {
  double value = 0.0;
  bool attained = false;
};

enum class WarpFamily {
  kSinh,       // sinh(a rho) / a
  kTanh,       // tanh(a rho) / a
  kTan,        // tan(a rho) / a
  kSin,        // sin(a rho) / a
  kConst,      // c
  kLinear,     // a rho
  kTabulated,  // cubic Hermite through samples
  kDerived,    // circle-quotient transform (or its inverse) of another warp
};

const char* family_name(WarpFamily family);

class WarpCurve {
 public:
  static WarpCurve sinh(double a = 1.0);
  static WarpCurve tanh(double a = 1.0);
  static WarpCurve tan(double a = 1.0);
  static WarpCurve sin(double a = 1.0);
  static WarpCurve constant(double c);
  static WarpCurve linear(double a = 1.0);

  // Uniform samples f(rho0 + k * step). Missing first derivatives are
  // filled in by fourth-order finite differences; missing second derivatives
  // are taken from the interpolant itself. Interpolation accuracy is the
  // caller's responsibility.
  static WarpCurve tabulated(double rho0, double step, std::vector<double> f,
                             std::vector<double> df = {},
                             std::vector<double> d2f = {});

  // f~ = r f / sqrt(kappa^2 f^2 + r^2) evaluated on top of `base`.
  static WarpCurve transformed(const WarpCurve& base, double r, double kappa);
  // f = r f~ / sqrt(r^2 - kappa^2 f~^2); evaluation fails where f~ >= r/kappa.
  static WarpCurve inverse_transformed(const WarpCurve& base, double r,
                                       double kappa);

  WarpFamily family() const;
  // a for the trigonometric/hyperbolic/linear families, c for kConst, 0
  // otherwise.
  double parameter() const;

  Interval natural_domain() const;
  WarpJet eval(double rho) const;
  // -f''/f in closed form when the family has one; always available for
  // named families and for derived warps over them.
  std::optional<double> closed_form_curvature(double rho) const;
  Supremum supremum(const Interval& domain) const;

 private:
  struct Named {
    WarpFamily family;
    double a;
  };
  struct Table {
    double rho0;
    double step;
    std::vector<double> f;
    std::vector<double> df;
    std::vector<double> d2f;  // empty: differentiate the interpolant
  };
  struct Derived {
    std::shared_ptr<const WarpCurve> base;
    double r;
    double kappa;
    bool inverse;
  };

  explicit WarpCurve(Named n) : rep_(n) {}
  explicit WarpCurve(std::shared_ptr<const Table> t) : rep_(std::move(t)) {}
  explicit WarpCurve(Derived d) : rep_(std::move(d)) {}

  std::variant<Named, std::shared_ptr<const Table>, Derived> rep_;
};

// A surface metric drho^2 + f^2 dtheta^2 on domain x S^1.
class RotSymMetric {
 public:
  // Throws DomainError if the domain is empty, leaves the warp's natural
  // domain, or a cap is requested where f(0) != 0 or f'(0) != 1.
  RotSymMetric(WarpCurve warp, Interval domain, bool capped_at_origin);

  // Natural domain of the warp; capped whenever the warp closes smoothly at 0.
  static RotSymMetric natural(WarpCurve warp);
  // [domain.lo, rho_max] of the natural domain.
  static RotSymMetric truncated(WarpCurve warp, double rho_max);

  const WarpCurve& warp() const { return warp_; }
  const Interval& domain() const { return domain_; }
  bool capped_at_origin() const { return capped_; }

 private:
  WarpCurve warp_;
  Interval domain_;
  bool capped_;
};

// Circle radius r and slope kappa of the diagonal action. The rational pair
// (m1, m2) is kept when given so that finite cyclic subgroups can be built.
class TransformParams {
 public:
  TransformParams(double r, double kappa);
  static TransformParams rational(double r, int m1, int m2);

  double r() const { return r_; }
  double kappa() const { return kappa_; }
  const std::optional<std::pair<int, int>>& slope_ratio() const {
    return ratio_;
  }

 private:
  double r_;
  double kappa_;
  std::optional<std::pair<int, int>> ratio_;
};

// Pure rule applied pointwise to warp values; shared by WarpCurve and the
// batch kernels so both round identically.
inline double upsilon_value(double f, double r, double kappa) {
  const double k2 = kappa * kappa;
  const double r2 = r * r;
  return r * f / std::sqrt(k2 * f * f + r2);
}

WarpJet eval_warp(const RotSymMetric& metric, double rho);
double gauss_curvature(const RotSymMetric& metric, double rho);
// R = 2K for surfaces.
double scalar_curvature(const RotSymMetric& metric, double rho);
RotSymMetric transform_upsilon(const RotSymMetric& metric,
                               const TransformParams& params);
RotSymMetric inverse_transform(const RotSymMetric& metric,
                               const TransformParams& params);
double quotient_circle_radius(double r1, double r2, double kappa);
double asymptote_radius(const TransformParams& params);

}  // namespace collapse_lab
