// Copyright 2026 The lindgrain Authors
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

#pragma once

// Internal quadrature helpers shared by bath.cpp and lindblad.cpp.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace lindgrain::detail {

inline double sinc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

/// Breakpoints on [0, upper]: geometric from `scale` so the short-time
/// structure of G is resolved, then capped at `max_len` per segment so
/// oscillating integrands see a bounded number of periods per panel.
inline std::vector<double> breakpoints(double upper, double scale, double max_len) {
  std::vector<double> pts{0.0};
  double x = std::min(scale, upper);
  while (true) {
    const double prev = pts.back();
    double next = std::min({x, upper, prev + max_len});
    pts.push_back(next);
    if (next >= upper) break;
    if (next >= x) x *= 2.0;
  }
  return pts;
}

namespace quad_impl {

// Splits [a, b] until the Kronrod error estimate meets `allow` or reaches
// the roundoff floor of the panel's own |f| integral.
template <class F>
double refine(F& f, double a, double b, double value, double error, double mag, double allow, int depth) {
  using boost::math::quadrature::gauss_kronrod;
  if (error <= allow || error <= 100 * std::numeric_limits<double>::epsilon() * mag || depth == 0) return value;
  const double mid = 0.5 * (a + b);
  double el = 0, er = 0, ml = 0, mr = 0;
  const double vl = gauss_kronrod<double, 61>::integrate(f, a, mid, 0, 0.0, &el, &ml);
  const double vr = gauss_kronrod<double, 61>::integrate(f, mid, b, 0, 0.0, &er, &mr);
  return refine(f, a, mid, vl, el, ml, 0.5 * allow, depth - 1) + refine(f, mid, b, vr, er, mr, 0.5 * allow, depth - 1);
}

}  // namespace quad_impl

/// Adaptive 61-point Kronrod over the given panels. The error budget is
/// absolute, tol * int |f|, shared equally between panels: a relative test
/// per panel never terminates on panels whose contributions cancel.
template <class F>
double integrate_panels(F f, const std::vector<double>& pts, double tol = 1e-12) {
  using boost::math::quadrature::gauss_kronrod;
  struct Panel {
    double a, b, value, error, mag;
  };
  std::vector<Panel> panels;
  double l1 = 0.0;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    if (pts[k + 1] <= pts[k]) continue;
    double err = 0, mag = 0;
    const double v = gauss_kronrod<double, 61>::integrate(f, pts[k], pts[k + 1], 0, 0.0, &err, &mag);
    panels.push_back({pts[k], pts[k + 1], v, err, mag});
    l1 += mag;
  }
  const double allow = panels.empty() ? 0.0 : tol * l1 / static_cast<double>(panels.size());
  double sum = 0.0;
  for (const Panel& p : panels) sum += quad_impl::refine(f, p.a, p.b, p.value, p.error, p.mag, allow, 12);
  return sum;
}

/// Fixed 61-point Kronrod rule per panel, no refinement. For smooth
/// integrands with at most a few oscillations per panel; adaptive relative
/// tolerances stall on panels whose contributions cancel.
template <class F>
double integrate_fixed(F f, const std::vector<double>& pts) {
  using boost::math::quadrature::gauss_kronrod;
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    if (pts[k + 1] <= pts[k]) continue;
    sum += gauss_kronrod<double, 61>::integrate(f, pts[k], pts[k + 1], 0);
  }
  return sum;
}

}  // namespace lindgrain::detail
