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

#include "collapse_lab/soliton.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "collapse_lab/error.hpp"

namespace collapse_lab {
namespace {

using Kind = DomainError::Kind;

// ln cosh x without overflow.
double log_cosh(double x) {
  const double ax = std::abs(x);
  return ax + std::log1p(std::exp(-2.0 * ax)) - std::numbers::ln2;
}

}  // namespace

double SolitonParams::a() const { return std::sqrt(std::abs(A)); }

RadialFunction RadialFunction::constant(double c) {
  return RadialFunction([c](double) { return RadialJet{c, 0.0, 0.0}; });
}

double blow_up_radius(const SolitonParams& p) {
  const double ab = p.A * p.B;
  if (ab >= 0.0) return std::numeric_limits<double>::infinity();
  return std::numbers::pi / (2.0 * std::sqrt(-ab));
}

WarpCurve solve_warp_ode(const SolitonParams& p, double rho_max, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw DomainError(Kind::kInvalidArgument, "ODE step must be positive");
  }
  if (!(rho_max > 0.0) || !std::isfinite(rho_max)) {
    throw DomainError(Kind::kInvalidArgument, "rho_max must be positive and finite");
  }
  const double blow_up = blow_up_radius(p);
  if (rho_max > blow_up - 10.0 * step) {
    throw DomainError(Kind::kBlowUp, "rho_max=" + std::to_string(rho_max) +
                                         " is within 10 steps of the blow-up at rho=" +
                                         std::to_string(blow_up));
  }

  const auto n = static_cast<std::size_t>(std::ceil(rho_max / step - 1e-9));
  const double h = rho_max / static_cast<double>(n);
  const double A = p.A;
  const double B = p.B;
  auto rhs = [A, B](double f) { return B - A * f * f; };

  std::vector<double> f(n + 1), df(n + 1), d2f(n + 1);
  f[0] = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double y = f[k];
    const double k1 = rhs(y);
    const double k2 = rhs(y + 0.5 * h * k1);
    const double k3 = rhs(y + 0.5 * h * k2);
    const double k4 = rhs(y + h * k3);
    f[k + 1] = y + h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
  }
  for (std::size_t k = 0; k <= n; ++k) {
    df[k] = rhs(f[k]);
    d2f[k] = -2.0 * A * f[k] * df[k];
  }
  return WarpCurve::tabulated(0.0, h, std::move(f), std::move(df), std::move(d2f));
}

WarpCurve closed_form_warp(const SolitonParams& p) {
  if (p.B != 1.0) {
    throw DomainError(Kind::kInvalidArgument,
                      "closed forms assume the smooth-cap normalisation B = 1");
  }
  if (p.A > 0.0) return WarpCurve::tanh(p.a());
  if (p.A < 0.0) return WarpCurve::tan(p.a());
  return WarpCurve::linear(1.0);
}

Potential soliton_potential(const SolitonParams& p) {
  if (!(p.B > 0.0) || !std::isfinite(p.A) || !std::isfinite(p.B)) {
    throw DomainError(Kind::kInvalidArgument, "soliton needs finite A and B > 0");
  }
  // phi' = 2 A f with f' = B - A f^2, so the frequency is sqrt(|A| B).
  const double a = std::sqrt(std::abs(p.A) * p.B);
  if (p.A > 0.0) {
    return Potential([a](double rho) {
      const double x = a * rho;
      const double c = std::cosh(x);
      return RadialJet{2.0 * log_cosh(x), 2.0 * a * std::tanh(x), 2.0 * a * a / (c * c)};
    });
  }
  if (p.A < 0.0) {
    return Potential([a](double rho) {
      const double x = a * rho;
      const double c = std::cos(x);
      return RadialJet{2.0 * std::log(c), -2.0 * a * std::tan(x), -2.0 * a * a / (c * c)};
    });
  }
  throw DomainError(Kind::kTrivialSoliton,
                    "A = 0 is the flat plane; every constant potential works");
}

SolitonResidual soliton_residual(const WarpCurve& warp, const Potential& phi, double rho) {
  const WarpJet w = warp.eval(rho);
  if (!(w.f > kPoleTolerance)) {
    throw DomainError(Kind::kPoleProximity, "soliton residual refused near the pole");
  }
  const RadialJet p = phi(rho);
  const double k = -w.d2f / w.f;
  return {std::abs(k - p.d2), std::abs(p.d2 - (w.df / w.f) * p.d1)};
}

double radial_laplacian(const WarpCurve& warp, const RadialFunction& u, double rho) {
  const WarpJet w = warp.eval(rho);
  if (!(w.f > kPoleTolerance)) {
    throw DomainError(Kind::kPoleProximity, "radial Laplacian refused near the pole");
  }
  const RadialJet j = u(rho);
  return j.d2 + (w.df / w.f) * j.d1;
}

double exploding_identity_residual(double rho) {
  const double half_pi = std::numbers::pi / 2.0;
  if (!(rho > kPoleTolerance && rho < half_pi - kPoleTolerance)) {
    throw DomainError(Kind::kPoleProximity,
                      "exploding identity needs rho strictly inside (0, pi/2)");
  }
  const RotSymMetric metric = RotSymMetric::natural(WarpCurve::tan(1.0));
  const double R = scalar_curvature(metric, rho);

  // ln(-R) by the chain rule from R = -4 sec^2, R' = -8 sec^2 tan,
  // R'' = -8 sec^2 (sec^2 + 2 tan^2).
  const RadialFunction log_minus_r([](double x) {
    const double t = std::tan(x);
    const double sec2 = 1.0 + t * t;
    const double r0 = -4.0 * sec2;
    const double r1 = -8.0 * sec2 * t;
    const double r2 = -8.0 * sec2 * (sec2 + 2.0 * t * t);
    const double q = r1 / r0;
    return RadialJet{std::log(-r0), q, r2 / r0 - q * q};
  });
  return std::abs(radial_laplacian(metric.warp(), log_minus_r, rho) + R);
}

}  // namespace collapse_lab
