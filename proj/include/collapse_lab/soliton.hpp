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

// Steady gradient Ricci solitons among rotationally symmetric surfaces.
//
// With g = drho^2 + f^2 dtheta^2 and a radial potential phi, the soliton
// equation K g = Hess(phi) reduces to -f''/f = phi'' = (f'/f) phi', whence
// f' + A f^2 = B. A smooth cap f(0) = 0, f'(0) = 1 forces B = 1 and the
// solutions are tanh(a rho)/a (A = a^2, the cigar), tan(a rho)/a (A = -a^2,
// the exploding soliton) and rho (A = 0).

#pragma once

#include <functional>

#include "collapse_lab/warped_metric.hpp"

namespace collapse_lab {

struct SolitonParams {
  double A = 0.0;
  double B = 1.0;

  // sqrt(|A|).
  double a() const;
};

struct RadialJet {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

// A function of rho alone with its first two derivatives.
class RadialFunction {
 public:
  explicit RadialFunction(std::function<RadialJet(double)> fn) : fn_(std::move(fn)) {}
  RadialJet operator()(double rho) const { return fn_(rho); }

  static RadialFunction constant(double c);

 private:
  std::function<RadialJet(double)> fn_;
};

using Potential = RadialFunction;

struct SolitonResidual {
  double res1 = 0.0;  // |-f''/f - phi''|
  double res2 = 0.0;  // |phi'' - (f'/f) phi'|
};

// Classical RK4 for f' = B - A f^2, f(0) = 0, on a uniform grid of
// ceil(rho_max / step) intervals. The result carries the exact derivatives
// f' = B - A f^2 and f'' = -2 A f f' at the nodes.
WarpCurve solve_warp_ode(const SolitonParams& params, double rho_max, double step);

// Blow-up radius of the solution, +inf when it exists for all rho >= 0.
double blow_up_radius(const SolitonParams& params);

WarpCurve closed_form_warp(const SolitonParams& params);
Potential soliton_potential(const SolitonParams& params);

SolitonResidual soliton_residual(const WarpCurve& warp, const Potential& phi, double rho);

// u'' + (f'/f) u'.
double radial_laplacian(const WarpCurve& warp, const RadialFunction& u, double rho);

// |Lap ln(-R) + R| for the exploding soliton f = tan(rho), R = -4 sec^2(rho).
double exploding_identity_residual(double rho);

}  // namespace collapse_lab
