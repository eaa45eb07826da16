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

#include "collapse_lab/warped_metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "collapse_lab/error.hpp"

namespace collapse_lab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kCapTolerance = 1e-10;

using Kind = DomainError::Kind;

[[noreturn]] void fail(Kind kind, const std::string& msg) {
  throw DomainError(kind, msg);
}

std::string fmt_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

// Relative closeness used to recognise the parameter choices for which a
// transformed named family is again a named family.
bool nearly_equal(double x, double y) {
  return std::abs(x - y) <=
         4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(x), std::abs(y));
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    fail(Kind::kInvalidArgument, std::string(what) + " must be positive and finite, got " +
                                     fmt_double(v));
  }
}

}  // namespace

bool Interval::contains(double x) const {
  if (std::isnan(x)) return false;
  if (x < lo) return false;
  return hi_open ? x < hi : x <= hi;
}

bool Interval::contains(const Interval& o) const {
  if (o.lo < lo) return false;
  if (o.hi < hi) return true;
  if (o.hi > hi) return false;
  return !hi_open || o.hi_open;
}

bool Interval::bounded() const { return std::isfinite(lo) && std::isfinite(hi); }

const char* family_name(WarpFamily family) {
  switch (family) {
    case WarpFamily::kSinh: return "sinh";
    case WarpFamily::kTanh: return "tanh";
    case WarpFamily::kTan: return "tan";
    case WarpFamily::kSin: return "sin";
    case WarpFamily::kConst: return "const";
    case WarpFamily::kLinear: return "linear";
    case WarpFamily::kTabulated: return "tabulated";
    case WarpFamily::kDerived: return "derived";
  }
  return "?";
}

WarpCurve WarpCurve::sinh(double a) {
  require_positive(a, "sinh parameter a");
  return WarpCurve(Named{WarpFamily::kSinh, a});
}
WarpCurve WarpCurve::tanh(double a) {
  require_positive(a, "tanh parameter a");
  return WarpCurve(Named{WarpFamily::kTanh, a});
}
WarpCurve WarpCurve::tan(double a) {
  require_positive(a, "tan parameter a");
  return WarpCurve(Named{WarpFamily::kTan, a});
}
WarpCurve WarpCurve::sin(double a) {
  require_positive(a, "sin parameter a");
  return WarpCurve(Named{WarpFamily::kSin, a});
}
WarpCurve WarpCurve::constant(double c) {
  require_positive(c, "const parameter c");
  return WarpCurve(Named{WarpFamily::kConst, c});
}
WarpCurve WarpCurve::linear(double a) {
  require_positive(a, "linear parameter a");
  return WarpCurve(Named{WarpFamily::kLinear, a});
}

WarpCurve WarpCurve::tabulated(double rho0, double step, std::vector<double> f,
                               std::vector<double> df, std::vector<double> d2f) {
  require_positive(step, "table step");
  const std::size_t n = f.size();
  if (n < 2) fail(Kind::kInvalidArgument, "a tabulated warp needs at least two samples");
  if (!df.empty() && df.size() != n) fail(Kind::kInvalidArgument, "derivative table size mismatch");
  if (!d2f.empty() && d2f.size() != n) {
    fail(Kind::kInvalidArgument, "second-derivative table size mismatch");
  }
  if (df.empty()) {
    df.resize(n);
    if (n >= 5) {
      for (std::size_t k = 0; k < n; ++k) {
        // Shift the five-point stencil inward near the ends.
        const std::size_t c = std::clamp<std::size_t>(k, 2, n - 3);
        const double* y = &f[c - 2];
        const int o = static_cast<int>(k) - static_cast<int>(c);
        double d = 0.0;
        switch (o) {
          case -2: d = -25 * y[0] + 48 * y[1] - 36 * y[2] + 16 * y[3] - 3 * y[4]; break;
          case -1: d = -3 * y[0] - 10 * y[1] + 18 * y[2] - 6 * y[3] + y[4]; break;
          case 0: d = y[0] - 8 * y[1] + 8 * y[3] - y[4]; break;
          case 1: d = -y[0] + 6 * y[1] - 18 * y[2] + 10 * y[3] + 3 * y[4]; break;
          case 2: d = 3 * y[0] - 16 * y[1] + 36 * y[2] - 48 * y[3] + 25 * y[4]; break;
        }
        df[k] = d / (12.0 * step);
      }
    } else {
      for (std::size_t k = 0; k < n; ++k) {
        const std::size_t lo = k == 0 ? 0 : k - 1;
        const std::size_t hi = k + 1 == n ? k : k + 1;
        df[k] = (f[hi] - f[lo]) / (static_cast<double>(hi - lo) * step);
      }
    }
  }
  return WarpCurve(std::make_shared<const Table>(
      Table{rho0, step, std::move(f), std::move(df), std::move(d2f)}));
}

WarpCurve WarpCurve::transformed(const WarpCurve& base, double r, double kappa) {
  require_positive(r, "circle radius r");
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
    fail(Kind::kInvalidArgument, "slope kappa must be nonnegative");
  }
  return WarpCurve(Derived{std::make_shared<const WarpCurve>(base), r, kappa, false});
}

WarpCurve WarpCurve::inverse_transformed(const WarpCurve& base, double r, double kappa) {
  require_positive(r, "circle radius r");
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
    fail(Kind::kInvalidArgument, "slope kappa must be nonnegative");
  }
  return WarpCurve(Derived{std::make_shared<const WarpCurve>(base), r, kappa, true});
}

WarpFamily WarpCurve::family() const {
  if (auto* n = std::get_if<Named>(&rep_)) return n->family;
  if (std::holds_alternative<std::shared_ptr<const Table>>(rep_)) return WarpFamily::kTabulated;
  return WarpFamily::kDerived;
}

double WarpCurve::parameter() const {
  if (auto* n = std::get_if<Named>(&rep_)) return n->a;
  return 0.0;
}

Interval WarpCurve::natural_domain() const {
  if (auto* n = std::get_if<Named>(&rep_)) {
    switch (n->family) {
      case WarpFamily::kTan: return {0.0, std::numbers::pi / (2.0 * n->a), true};
      case WarpFamily::kSin: return {0.0, std::numbers::pi / n->a, false};
      case WarpFamily::kConst: return {-kInf, kInf, false};
      default: return {0.0, kInf, false};
    }
  }
  if (auto* t = std::get_if<std::shared_ptr<const Table>>(&rep_)) {
    const Table& tab = **t;
    return {tab.rho0, tab.rho0 + static_cast<double>(tab.f.size() - 1) * tab.step, false};
  }
  return std::get<Derived>(rep_).base->natural_domain();
}

WarpJet WarpCurve::eval(double rho) const {
  if (auto* n = std::get_if<Named>(&rep_)) {
    if (!natural_domain().contains(rho)) {
      fail(Kind::kOutOfDomain, std::string(family_name(n->family)) + " warp evaluated at rho=" +
                                   fmt_double(rho) + " outside its domain");
    }
    const double a = n->a;
    const double x = a * rho;
    switch (n->family) {
      case WarpFamily::kSinh: {
        const double s = std::sinh(x);
        return {s / a, std::cosh(x), a * s};
      }
      case WarpFamily::kTanh: {
        const double t = std::tanh(x);
        const double c = std::cosh(x);
        const double sech2 = 1.0 / (c * c);
        return {t / a, sech2, -2.0 * a * t * sech2};
      }
      case WarpFamily::kTan: {
        const double t = std::tan(x);
        const double sec2 = 1.0 + t * t;
        return {t / a, sec2, 2.0 * a * t * sec2};
      }
      case WarpFamily::kSin: {
        const double s = std::sin(x);
        return {s / a, std::cos(x), -a * s};
      }
      case WarpFamily::kConst: return {a, 0.0, 0.0};
      case WarpFamily::kLinear: return {x, a, 0.0};
      default: break;
    }
  }
  if (auto* t = std::get_if<std::shared_ptr<const Table>>(&rep_)) {
    const Table& tab = **t;
    const std::size_t n = tab.f.size();
    const double span = static_cast<double>(n - 1) * tab.step;
    const double u = rho - tab.rho0;
    const double slack = 1e-12 * std::max(1.0, span);
    if (!(u >= -slack && u <= span + slack)) {
      fail(Kind::kOutOfDomain, "tabulated warp evaluated at rho=" + fmt_double(rho) +
                                   " outside its table");
    }
    const double pos = std::clamp(u / tab.step, 0.0, static_cast<double>(n - 1));
    const std::size_t k = std::min(static_cast<std::size_t>(pos), n - 2);
    const double t1 = pos - static_cast<double>(k);
    const double h = tab.step;
    const double y0 = tab.f[k], y1 = tab.f[k + 1];
    const double m0 = tab.df[k], m1 = tab.df[k + 1];
    const double t2 = t1 * t1, t3 = t2 * t1;
    WarpJet j;
    j.f = (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t1) * h * m0 + (-2 * t3 + 3 * t2) * y1 +
          (t3 - t2) * h * m1;
    j.df = ((6 * t2 - 6 * t1) * y0 + (-6 * t2 + 6 * t1) * y1) / h +
           (3 * t2 - 4 * t1 + 1) * m0 + (3 * t2 - 2 * t1) * m1;
    if (!tab.d2f.empty()) {
      j.d2f = (1.0 - t1) * tab.d2f[k] + t1 * tab.d2f[k + 1];
    } else {
      j.d2f = ((12 * t1 - 6) * y0 + (-12 * t1 + 6) * y1) / (h * h) +
              ((6 * t1 - 4) * m0 + (6 * t1 - 2) * m1) / h;
    }
    return j;
  }

  const Derived& d = std::get<Derived>(rep_);
  const WarpJet b = d.base->eval(rho);
  const double r = d.r;
  const double k2 = d.kappa * d.kappa;
  const double r2 = r * r;
  const double r3 = r2 * r;
  if (!d.inverse) {
    const double D = k2 * b.f * b.f + r2;
    const double s = std::sqrt(D);
    return {r * b.f / s, r3 * b.df / (D * s),
            r3 * (b.d2f * D - 3.0 * k2 * b.f * b.df * b.df) / (D * D * s)};
  }
  const double E = r2 - k2 * b.f * b.f;
  if (!(E > 0.0)) {
    fail(Kind::kNotInRange, "inverse transform undefined at rho=" + fmt_double(rho) +
                                ": warp reaches the asymptote r/kappa");
  }
  const double s = std::sqrt(E);
  return {r * b.f / s, r3 * b.df / (E * s),
          r3 * (b.d2f * E + 3.0 * k2 * b.f * b.df * b.df) / (E * E * s)};
}

std::optional<double> WarpCurve::closed_form_curvature(double rho) const {
  if (auto* n = std::get_if<Named>(&rep_)) {
    if (!natural_domain().contains(rho)) {
      fail(Kind::kOutOfDomain, "curvature requested outside the warp domain");
    }
    const double a = n->a;
    const double x = a * rho;
    switch (n->family) {
      case WarpFamily::kSinh: return -a * a;
      case WarpFamily::kTanh: {
        const double c = std::cosh(x);
        return 2.0 * a * a / (c * c);
      }
      case WarpFamily::kTan: {
        const double c = std::cos(x);
        return -2.0 * a * a / (c * c);
      }
      case WarpFamily::kSin: return a * a;
      case WarpFamily::kConst:
      case WarpFamily::kLinear: return 0.0;
      default: break;
    }
  }
  if (std::holds_alternative<std::shared_ptr<const Table>>(rep_)) return std::nullopt;

  // -f~''/f~ rewritten in terms of the base curvature so that it stays
  // finite where the base warp vanishes.
  const Derived& d = std::get<Derived>(rep_);
  const std::optional<double> kb = d.base->closed_form_curvature(rho);
  if (!kb) return std::nullopt;
  const WarpJet b = d.base->eval(rho);
  const double r2 = d.r * d.r;
  const double k2 = d.kappa * d.kappa;
  if (!d.inverse) {
    const double D = k2 * b.f * b.f + r2;
    return r2 * (*kb * D + 3.0 * k2 * b.df * b.df) / (D * D);
  }
  const double E = r2 - k2 * b.f * b.f;
  if (!(E > 0.0)) fail(Kind::kNotInRange, "inverse transform undefined at rho=" + fmt_double(rho));
  return r2 * (*kb * E - 3.0 * k2 * b.df * b.df) / (E * E);
}

Supremum WarpCurve::supremum(const Interval& dom) const {
  auto end_value = [&](double x) -> Supremum {
    if (std::isinf(x)) return {kInf, false};
    return {eval(x).f, true};
  };
  if (auto* n = std::get_if<Named>(&rep_)) {
    const double a = n->a;
    switch (n->family) {
      case WarpFamily::kConst: return {a, true};
      case WarpFamily::kTanh:
        if (std::isinf(dom.hi)) return {1.0 / a, false};
        return {eval(dom.hi).f, !dom.hi_open};
      case WarpFamily::kTan:
        if (dom.hi >= std::numbers::pi / (2.0 * a)) return {kInf, false};
        return {eval(dom.hi).f, !dom.hi_open};
      case WarpFamily::kSin: {
        const double peak = std::numbers::pi / (2.0 * a);
        if (dom.contains(peak)) return {1.0 / a, true};
        const Supremum lo = end_value(dom.lo);
        Supremum hi = {eval(dom.hi).f, !dom.hi_open};
        return lo.value >= hi.value ? lo : hi;
      }
      default:  // increasing families
        if (std::isinf(dom.hi)) return {kInf, false};
        return {eval(dom.hi).f, !dom.hi_open};
    }
  }
  if (auto* t = std::get_if<std::shared_ptr<const Table>>(&rep_)) {
    const Table& tab = **t;
    Supremum best{-kInf, true};
    for (std::size_t k = 0; k < tab.f.size(); ++k) {
      const double x = tab.rho0 + static_cast<double>(k) * tab.step;
      if (dom.contains(x)) best.value = std::max(best.value, tab.f[k]);
    }
    for (double x : {dom.lo, dom.hi}) {
      if (natural_domain().contains(x)) best.value = std::max(best.value, eval(x).f);
    }
    return best;
  }
  const Derived& d = std::get<Derived>(rep_);
  const Supremum b = d.base->supremum(dom);
  if (d.kappa == 0.0) return b;
  if (!d.inverse) {
    if (std::isinf(b.value)) return {d.r / d.kappa, false};
    return {upsilon_value(b.value, d.r, d.kappa), b.attained};
  }
  const double E = d.r * d.r - d.kappa * d.kappa * b.value * b.value;
  if (!(E > 0.0)) return {kInf, false};
  return {d.r * b.value / std::sqrt(E), b.attained};
}

RotSymMetric::RotSymMetric(WarpCurve warp, Interval domain, bool capped_at_origin)
    : warp_(std::move(warp)), domain_(domain), capped_(capped_at_origin) {
  if (!(domain_.lo < domain_.hi)) {
    fail(Kind::kInvalidArgument, "metric domain must satisfy rho_min < rho_max");
  }
  if (!warp_.natural_domain().contains(domain_)) {
    fail(Kind::kOutOfDomain, "metric domain exceeds the warp's natural domain");
  }
  if (capped_) {
    if (domain_.lo != 0.0) fail(Kind::kInvalidArgument, "a capped metric must start at rho=0");
    const WarpJet j = warp_.eval(0.0);
    if (std::abs(j.f) > kCapTolerance || std::abs(j.df - 1.0) > kCapTolerance) {
      fail(Kind::kInvalidArgument, "smooth cap requires f(0)=0 and f'(0)=1");
    }
  }
}

RotSymMetric RotSymMetric::natural(WarpCurve warp) {
  const Interval dom = warp.natural_domain();
  bool capped = false;
  if (dom.lo == 0.0) {
    const WarpJet j = warp.eval(0.0);
    capped = std::abs(j.f) <= kCapTolerance && std::abs(j.df - 1.0) <= kCapTolerance;
  }
  return RotSymMetric(std::move(warp), dom, capped);
}

RotSymMetric RotSymMetric::truncated(WarpCurve warp, double rho_max) {
  RotSymMetric full = natural(std::move(warp));
  Interval dom = full.domain();
  if (std::isinf(dom.lo)) dom.lo = 0.0;
  dom.hi = rho_max;
  dom.hi_open = false;
  return RotSymMetric(full.warp_, dom, full.capped_);
}

TransformParams::TransformParams(double r, double kappa) : r_(r), kappa_(kappa) {
  require_positive(r, "circle radius r");
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
    fail(Kind::kInvalidArgument, "slope kappa must be nonnegative and finite");
  }
}

TransformParams TransformParams::rational(double r, int m1, int m2) {
  if (m1 < 0 || m2 <= 0) {
    fail(Kind::kInvalidArgument, "slope ratio needs m1 >= 0 and m2 >= 1");
  }
  TransformParams p(r, static_cast<double>(m1) / static_cast<double>(m2));
  p.ratio_ = std::make_pair(m1, m2);
  return p;
}

WarpJet eval_warp(const RotSymMetric& metric, double rho) {
  if (!metric.domain().contains(rho)) {
    fail(Kind::kOutOfDomain, "rho=" + fmt_double(rho) + " lies outside the metric domain");
  }
  return metric.warp().eval(rho);
}

double gauss_curvature(const RotSymMetric& metric, double rho) {
  if (!metric.domain().contains(rho)) {
    fail(Kind::kOutOfDomain, "rho=" + fmt_double(rho) + " lies outside the metric domain");
  }
  if (auto k = metric.warp().closed_form_curvature(rho)) return *k;
  const WarpJet j = metric.warp().eval(rho);
  if (!(j.f > kPoleTolerance)) {
    fail(Kind::kPoleProximity, "curvature -f''/f refused at rho=" + fmt_double(rho) +
                                   " where f <= " + fmt_double(kPoleTolerance));
  }
  return -j.d2f / j.f;
}

double scalar_curvature(const RotSymMetric& metric, double rho) {
  return 2.0 * gauss_curvature(metric, rho);
}

RotSymMetric transform_upsilon(const RotSymMetric& metric, const TransformParams& params) {
  const double r = params.r();
  const double kappa = params.kappa();
  const WarpCurve& w = metric.warp();
  const double a = w.parameter();
  auto keep = [&](WarpCurve warp) {
    return RotSymMetric(std::move(warp), metric.domain(), metric.capped_at_origin());
  };
  if (kappa == 0.0) return metric;
  switch (w.family()) {
    // sinh(a x)/a -> tanh(a x)/a and tan(a x)/a -> sin(a x)/a exactly when
    // kappa = a r, since kappa^2 f^2 + r^2 becomes r^2 cosh^2 or r^2 sec^2.
    case WarpFamily::kSinh:
      if (nearly_equal(kappa, a * r)) return keep(WarpCurve::tanh(a));
      break;
    case WarpFamily::kTan:
      if (nearly_equal(kappa, a * r)) return keep(WarpCurve::sin(a));
      break;
    case WarpFamily::kConst:
      return keep(WarpCurve::constant(upsilon_value(a, r, kappa)));
    default:
      break;
  }
  return keep(WarpCurve::transformed(w, r, kappa));
}

RotSymMetric inverse_transform(const RotSymMetric& metric, const TransformParams& params) {
  const double r = params.r();
  const double kappa = params.kappa();
  if (kappa == 0.0) return metric;
  const WarpCurve& w = metric.warp();
  const double bound = r / kappa;
  const Supremum sup = w.supremum(metric.domain());
  const bool touches = nearly_equal(sup.value, bound) ? sup.attained : sup.value > bound;
  if (touches) {
    fail(Kind::kNotInRange, "warp reaches the asymptote r/kappa=" + fmt_double(bound) +
                                "; it is not the image of any warp");
  }
  const double a = w.parameter();
  auto keep = [&](WarpCurve warp) {
    return RotSymMetric(std::move(warp), metric.domain(), metric.capped_at_origin());
  };
  switch (w.family()) {
    case WarpFamily::kTanh:
      if (nearly_equal(kappa, a * r)) return keep(WarpCurve::sinh(a));
      break;
    case WarpFamily::kSin:
      if (nearly_equal(kappa, a * r)) return keep(WarpCurve::tan(a));
      break;
    case WarpFamily::kConst:
      return keep(WarpCurve::constant(r * a / std::sqrt(r * r - kappa * kappa * a * a)));
    default:
      break;
  }
  return keep(WarpCurve::inverse_transformed(w, r, kappa));
}

double quotient_circle_radius(double r1, double r2, double kappa) {
  require_positive(r1, "r1");
  require_positive(r2, "r2");
  if (!(kappa >= 0.0)) fail(Kind::kInvalidArgument, "slope kappa must be nonnegative");
  return std::sqrt(r1 * r1 * r2 * r2 / (kappa * kappa * r1 * r1 + r2 * r2));
}

double asymptote_radius(const TransformParams& params) {
  if (params.kappa() == 0.0) {
    fail(Kind::kNoAsymptote, "kappa = 0 leaves the warp unchanged; there is no asymptote");
  }
  return params.r() / params.kappa();
}

}  // namespace collapse_lab
